// Command-line front end. Every command writes a JSON document that embeds
// the run manifest, so re-running with the same arguments reproduces it
// byte for byte.
//
// Exit codes: 0 pass, 1 a requested property fails, 2 usage or input error.

#pragma once

#include <algorithm> // for reverse
#include <cmath>     // for pow, abs
#include <cstdint>   // for uint64_t
#include <fstream>   // for ofstream
#include <iostream>  // for ostream
#include <map>       // for map
#include <optional>  // for optional
#include <set>       // for set
#include <sstream>   // for stringstream
#include <string>    // for string
#include <vector>    // for vector

#include "CLI11.hpp"

#include "construct.hpp"
#include "core.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "quasi_inverse.hpp"
#include "real_families.hpp"

namespace preassoc::cli {

  using io::json;

  enum exit_code : int { pass = 0, property_failure = 1, input_error = 2 };

  struct RunManifest {
    std::string                command;
    std::vector<std::string>   inputs;
    std::size_t                horizon   = 4;
    std::uint64_t              seed      = 0;
    double                     tolerance = real::default_tolerance;
    std::optional<std::string> output_path;

    [[nodiscard]] json to_json() const {
      json j{{"command", command},
             {"inputs", inputs},
             {"horizon", horizon},
             {"seed", seed},
             {"tolerance", tolerance}};
      if (output_path) {
        j["output_path"] = *output_path;
      }
      return j;
    }
  };

  namespace detail {
    inline void validate(RunManifest const& m) {
      if (m.horizon < TabulatedVariadic::minimum_horizon) {
        throw io::FormatError("--horizon must be at least 2");
      }
      if (!(m.tolerance > 0)) {
        throw io::FormatError("--tol must be positive");
      }
    }

    inline void emit(json const& doc, std::optional<std::string> const& path, std::ostream& out) {
      if (path) {
        std::ofstream f(*path);
        if (!f) {
          throw io::FormatError(*path + ": cannot write");
        }
        f << doc.dump(2) << '\n';
      } else {
        out << doc.dump(2) << '\n';
      }
    }

    inline std::map<std::string, double> parse_params(std::vector<std::string> const& kv) {
      std::map<std::string, double> out;
      for (auto const& s : kv) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw io::FormatError("--param expects key=value, got \"" + s + "\"");
        }
        try {
          std::size_t used = 0;
          auto        v    = std::stod(s.substr(eq + 1), &used);
          if (used != s.size() - eq - 1) {
            throw std::invalid_argument(s);
          }
          out[s.substr(0, eq)] = v;
        } catch (std::logic_error const&) {
          throw io::FormatError("--param " + s + ": value is not a number");
        }
      }
      return out;
    }

    inline std::set<std::string> split(std::vector<std::string> const& items) {
      std::set<std::string> out;
      for (auto const& item : items) {
        std::stringstream ss(item);
        std::string       p;
        while (std::getline(ss, p, ',')) {
          if (!p.empty()) {
            out.insert(p);
          }
        }
      }
      return out;
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // check
  ////////////////////////////////////////////////////////////////////////

  // Runs every applicable oracle on a table file. Requested properties
  // default to preassociativity, plus associativity for operations.
  inline int cmd_check(RunManifest const&           m,
                       std::set<std::string>        require,
                       std::optional<std::size_t>   horizon,
                       std::ostream&                out) {
    auto f = io::table_from_json(io::read_file(m.inputs.at(0)));
    if (horizon) {
      if (*horizon > f.horizon()) {
        throw io::FormatError("--horizon exceeds the horizon of the table ("
                              + std::to_string(f.horizon()) + ")");
      }
      f = f.truncate(*horizon);
    }
    auto manifest    = m;
    manifest.horizon = f.horizon();

    std::vector<CheckReport>           reports;
    std::map<std::string, std::string> skipped;
    auto run = [&](std::string const& name, bool applicable, std::string const& why, auto&& check) {
      if (applicable) {
        reports.push_back(check(f));
      } else {
        skipped[name] = why;
      }
    };
    bool const op  = f.is_operation();
    bool const eps = f.codomain().has_epsilon();
    auto const not_op = std::string("codomain is not the carrier with ε");
    run("standard", true, "", is_standard);
    run("epsilon_standard", eps, "codomain lacks ε", is_epsilon_standard);
    run("associative", op, not_op, is_associative);
    run("associative_short", op, not_op, is_associative_short);
    run("preassociative", true, "", is_preassociative);
    run("preassociative_pairwise", true, "", is_preassociative_pairwise);
    run("strongly_preassociative", f.horizon() >= 3, "horizon below 3", is_strongly_preassociative);
    run("symmetric", true, "", is_symmetric);
    run("idempotent", op, not_op, is_idempotent);
    run("unarily_idempotent", op, not_op, is_unarily_idempotent);
    run("unarily_range_idempotent", op, not_op, is_unarily_range_idempotent);
    run("unarily_quasi_range_idempotent", true, "", is_unarily_quasi_range_idempotent);
    bool pre = false;
    for (auto const& r : reports) {
      if (r.property == "preassociative") {
        pre = r.verdict;
      }
    }
    run("constant_parts", pre, "not preassociative", constant_part_check);

    if (require.empty()) {
      require.insert("preassociative");
      if (op) {
        require.insert("associative");
      }
    }

    auto const render = io::render_over(f.carrier());
    json       rs     = json::array();
    bool       ok     = true;
    std::set<std::string> found;
    for (auto const& r : reports) {
      rs.push_back(io::to_json(r, render, m.seed));
      found.insert(r.property);
      if (require.count(r.property) != 0 && !r.verdict) {
        ok = false;
      }
    }
    for (auto const& p : require) {
      if (found.count(p) == 0) {
        throw io::FormatError("requested property \"" + p + "\" "
                              + (skipped.count(p) ? "is not applicable: " + skipped[p]
                                                  : "is unknown"));
      }
    }
    auto const k = kernel_partition(f);
    json       sk = json::object();
    for (auto const& [p, why] : skipped) {
      sk[p] = why;
    }
    json doc{{"manifest", manifest.to_json()},
             {"required", require},
             {"reports", std::move(rs)},
             {"skipped", std::move(sk)},
             {"kernel", {{"classes", k.number_of_classes()}, {"words", f.number_of_words()}}},
             {"verdict", ok}};
    detail::emit(doc, m.output_path, out);
    return ok ? pass : property_failure;
  }

  ////////////////////////////////////////////////////////////////////////
  // synth
  ////////////////////////////////////////////////////////////////////////

  inline json to_json(ExtensionConditionsReport const& r, Carrier const& x, std::uint64_t seed) {
    json cs = json::array();
    for (auto const& c : r.conditions) {
      cs.push_back(io::to_json(c, io::render_over(x), seed));
    }
    json j{{"mode", r.mode == ExtensionConditionsReport::Mode::associative ? "assoc" : "preassoc"},
           {"verdict", r.verdict()},
           {"conditions", std::move(cs)}};
    if (r.chosen_g) {
      j["g"] = io::to_json(*r.chosen_g);
    }
    return j;
  }

  // Extends unary and binary parts to the horizon. The table goes to
  // --out when given, otherwise into the report under "table".
  inline int cmd_synth(RunManifest const&                m,
                       std::string const&                mode,
                       std::optional<std::string> const& g_path,
                       std::ostream&                     out) {
    auto parts = io::parts_from_json(io::read_file(m.inputs.at(0)));
    json doc{{"manifest", m.to_json()}};
    std::optional<TabulatedVariadic> table;
    ExtensionConditionsReport         report;
    if (mode == "assoc") {
      if (g_path) {
        throw io::FormatError("--g is only meaningful with --mode preassoc");
      }
      report = io::detail::wrap("parts", [&] {
        return check_associative_extension(parts.unary, parts.binary);
      });
      if (report.verdict()) {
        table = extend_associative(parts.unary, parts.binary, m.horizon);
      }
    } else if (mode == "preassoc") {
      if (!parts.nullary) {
        throw io::FormatError("parts file: preassoc mode needs a \"nullary\" value");
      }
      auto g = g_path ? io::unary_map_from_json(io::read_file(*g_path))
                      : canonical_quasi_inverse(parts.unary);
      try {
        report = check_preassociative_extension(parts.unary, parts.binary, g);
      } catch (PreconditionError const& e) {
        throw io::FormatError(std::string("--g: ") + e.what());
      } catch (Error const& e) {
        throw io::FormatError(e.what());
      }
      if (report.verdict()) {
        try {
          table = extend_preassociative(*parts.nullary, parts.unary, parts.binary, g, m.horizon);
        } catch (PreconditionError const& e) {
          doc["conditions"] = to_json(report, parts.carrier, m.seed);
          doc["error"]      = io::to_json(e.report(), io::render_over(parts.carrier), m.seed);
          out << doc.dump(2) << '\n';
          return property_failure;
        }
      }
    } else {
      throw io::FormatError("--mode must be assoc or preassoc");
    }
    doc["conditions"] = to_json(report, parts.carrier, m.seed);
    if (!table) {
      out << doc.dump(2) << '\n';
      return property_failure;
    }
    if (m.output_path) {
      detail::emit(io::to_json(*table), m.output_path, out);
      out << doc.dump(2) << '\n';
    } else {
      doc["table"] = io::to_json(*table);
      out << doc.dump(2) << '\n';
    }
    return pass;
  }

  ////////////////////////////////////////////////////////////////////////
  // qinv
  ////////////////////////////////////////////////////////////////////////

  // Q(f) in canonical order, with the symmetry check f ∈ Q(g) per member.
  inline int cmd_qinv(RunManifest const& m, std::ostream& out) {
    auto f  = io::unary_map_from_json(io::read_file(m.inputs.at(0)));
    auto qs = enumerate_quasi_inverses(f);
    json members = json::array();
    bool ok      = true;
    for (auto const& g : qs.members) {
      auto forward   = is_quasi_inverse(f, g);
      auto symmetric = is_quasi_inverse(g, f);
      ok             = ok && forward.verdict && symmetric.verdict;
      members.push_back({{"map", io::to_json(g)["map"]},
                         {"quasi_inverse", forward.verdict},
                         {"symmetric", symmetric.verdict}});
    }
    json doc{{"manifest", m.to_json()},
             {"base", io::to_json(f)},
             {"count", qs.members.size()},
             {"members", std::move(members)},
             {"verdict", ok}};
    detail::emit(doc, m.output_path, out);
    return ok ? pass : property_failure;
  }

  ////////////////////////////////////////////////////////////////////////
  // demo
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    struct Assertions {
      json items = json::array();
      bool ok    = true;

      void expect(std::string const& what, json expected, json actual, bool holds) {
        items.push_back({{"assert", what},
                         {"expected", std::move(expected)},
                         {"actual", std::move(actual)},
                         {"pass", holds}});
        ok = ok && holds;
      }

      void near(std::string const& what, double expected, double actual, double tol) {
        expect(what, expected, actual, std::abs(expected - actual) <= tol);
      }
    };

    // Number of binary operations on {0, 1} admitting an associative
    // ε-standard extension with F₁ = id.
    inline std::size_t semigroup_census(std::size_t n) {
      auto const  x  = Carrier::of_size(n);
      auto const  id = UnaryMap::identity(Codomain::of(x));
      std::size_t total = 1;
      for (std::size_t i = 0; i < n * n; ++i) {
        total *= n;
      }
      std::size_t count = 0;
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<value_type> t(n * n);
        auto                    c = code;
        for (auto& v : t) {
          v = static_cast<value_type>(c % n);
          c /= n;
        }
        BinaryMap f2(x, Codomain::of(x), std::move(t));
        if (check_associative_extension(id, f2).verdict()) {
          ++count;
        }
      }
      return count;
    }
  }  // namespace detail

  inline std::vector<std::string> demo_names() {
    return {"pnorm", "remark-abs", "remark-expseq", "remark-relu", "semigroup-count"};
  }

  inline int cmd_demo(RunManifest const&                   m,
                      std::string const&                   name,
                      std::map<std::string, double> const& params,
                      std::ostream&                        out) {
    constexpr double  exact = 1e-12;
    detail::Assertions a;
    json               extra = json::object();
    auto eval = [](real::RealFamily const& f, real::real_word const& w) { return *f(w); };

    if (name == "remark-relu") {
      auto h = real::relu_sum_family();
      a.near("H(-1,-2) = 0", 0, eval(h, {-1, -2}), exact);
      a.near("H(-1,1) = 0", 0, eval(h, {-1, 1}), exact);
      a.near("H(-1,-2,1) = 0", 0, eval(h, {-1, -2, 1}), exact);
      a.near("H(-1,1,1) = 1", 1, eval(h, {-1, 1, 1}), exact);
      real::WordSampler s(m.seed);
      auto r = real::check_preassociativity_witnessed(h, s, 0, m.tolerance);
      a.expect("not preassociative", false, r.verdict, !r.verdict);
      extra["report"] = io::to_json(r, m.seed);
    } else if (name == "remark-abs") {
      auto f = real::abs_then_sum_family();
      a.near("F(1) = 1", 1, eval(f, {1}), exact);
      a.near("F(-1) = 1", 1, eval(f, {-1}), exact);
      a.near("F(1,1) = 2", 2, eval(f, {1, 1}), exact);
      a.near("F(1,-1) = 0", 0, eval(f, {1, -1}), exact);
      real::WordSampler s(m.seed);
      auto r = real::check_preassociativity_witnessed(f, s, 0, m.tolerance);
      a.expect("not preassociative", false, r.verdict, !r.verdict);
      extra["report"] = io::to_json(r, m.seed);
    } else if (name == "remark-expseq") {
      auto d = real::exp_seq_demo();
      a.near("H(x1 x2) = 5", 5, d.pair_value, 1e-9);
      a.near("H(x1' x2') = 5", 5, d.pair_value_other, 1e-9);
      a.near("H(x1 x2 x3) = 10", 10, d.triple_value, 1e-9);
      a.near("H(x1' x2' x3) = 3^1.5 + 2^1.5 + 1",
             std::pow(3, 1.5) + std::pow(2, 1.5) + 1,
             d.triple_value_other,
             1e-9);
      auto gap = std::abs(d.triple_value - d.triple_value_other);
      a.expect("triples differ by more than 0.9", "> 0.9", gap, gap > 0.9);
    } else if (name == "pnorm") {
      for (auto const& [k, v] : params) {
        if (k != "p") {
          throw io::FormatError("demo pnorm: unknown parameter \"" + k + "\"");
        }
      }
      auto p = real::parameter(params, "p", 2);
      auto f = io::detail::wrap("--param p", [&] { return real::pnorm_family(p); });
      real::WordSampler s(m.seed);
      auto assoc = real::check_associativity_identity(f, s, 1000, m.tolerance);
      auto unary = real::check_unary_idempotence(f, s, 0, m.tolerance);
      auto range = real::check_unary_range_idempotence(f, s, 1000, m.tolerance);
      a.expect("associative on 1000 samples", true, assoc.verdict, assoc.verdict);
      a.expect("not unarily idempotent", false, unary.verdict, !unary.verdict);
      a.expect("witness x = -1",
               "-1",
               unary.witness.empty() ? "" : io::to_string(unary.witness[0]),
               unary.witness == std::vector<real::real_word>{{-1.0}});
      a.expect("unarily range-idempotent", true, range.verdict, range.verdict);
      auto id_f  = real::pnorm_family(p, true);
      auto assoc_id = real::check_associativity_identity(id_f, s, 1000, m.tolerance);
      a.expect("still associative with F1 = id", true, assoc_id.verdict, assoc_id.verdict);
      extra["reports"] = json::array({io::to_json(assoc, m.seed),
                                      io::to_json(unary, m.seed),
                                      io::to_json(range, m.seed),
                                      io::to_json(assoc_id, m.seed)});
    } else if (name == "semigroup-count") {
      auto c = detail::semigroup_census(2);
      a.expect("associative binary operations on 2 elements", 8, c, c == 8);
    } else {
      throw io::FormatError("unknown demo \"" + name + "\"");
    }
    json doc{{"manifest", m.to_json()},
             {"demo", name},
             {"assertions", a.items},
             {"details", std::move(extra)},
             {"verdict", a.ok}};
    detail::emit(doc, m.output_path, out);
    return a.ok ? pass : property_failure;
  }

  ////////////////////////////////////////////////////////////////////////
  // family
  ////////////////////////////////////////////////////////////////////////

  // Sampled checks on a real family. Nothing is required unless --require
  // names properties.
  inline int cmd_family(RunManifest const&                   m,
                        std::string const&                   name,
                        std::map<std::string, double> const& params,
                        std::size_t                          samples,
                        std::set<std::string> const&         require,
                        std::ostream&                        out) {
    auto f = io::detail::wrap("family", [&] { return real::make_family(name, params); });
    real::WordSampler s(m.seed);
    std::vector<real::RealCheckReport> reports;
    if (f.epsilon_standard) {
      reports.push_back(real::check_associativity_identity(f, s, samples, m.tolerance));
      reports.push_back(real::check_unary_idempotence(f, s, samples, m.tolerance));
      reports.push_back(real::check_unary_range_idempotence(f, s, samples, m.tolerance));
    }
    if (f.witness_generator) {
      reports.push_back(real::check_preassociativity_witnessed(f, s, samples, m.tolerance));
    }
    json rs = json::array();
    bool ok = true;
    std::set<std::string> found;
    for (auto const& r : reports) {
      rs.push_back(io::to_json(r, m.seed));
      found.insert(r.property);
      ok = ok && (require.count(r.property) == 0 || r.verdict);
    }
    json fac;
    try {
      auto ff = real::factorize_family(f, s, samples, m.tolerance);
      fac     = {{"inner", ff.inner.name},
                 {"inner_parameters", ff.inner.parameters},
                 {"outer", ff.outer_name},
                 {"max_error", ff.max_error},
                 {"verified", ff.verified}};
      found.insert("factorizable");
      ok = ok && (require.count("factorizable") == 0 || ff.verified);
    } catch (Error const& e) {
      fac = {{"unsupported", e.what()}};
    }
    for (auto const& p : require) {
      if (found.count(p) == 0) {
        throw io::FormatError("requested property \"" + p + "\" is not available for " + name);
      }
    }
    json doc{{"manifest", m.to_json()},
             {"family", f.name},
             {"parameters", f.parameters},
             {"reports", std::move(rs)},
             {"factorization", std::move(fac)},
             {"verdict", ok}};
    detail::emit(doc, m.output_path, out);
    return ok ? pass : property_failure;
  }

  ////////////////////////////////////////////////////////////////////////
  // Entry point
  ////////////////////////////////////////////////////////////////////////

  inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decide associativity and preassociativity of variadic functions", "preassoc"};
    app.require_subcommand(1);

    RunManifest                m;
    std::optional<std::size_t> horizon;
    std::vector<std::string>   require, params;
    std::optional<std::string> g_path, out_path;
    std::string                input, mode = "assoc", name;
    std::size_t                samples = 1000;

    auto common = [&](CLI::App* c) {
      c->add_option("--seed", m.seed, "Seed recorded in the report and used for sampling");
      c->add_option("--tol", m.tolerance, "Tolerance for real-valued comparisons");
      c->add_option("--out", out_path, "Write the report (or table, for synth) to FILE");
    };

    auto* check = app.add_subcommand("check", "Run the oracle suite on a table file");
    check->add_option("file", input, "Table file")->required();
    check->add_option("--horizon", horizon, "Check up to this horizon (≤ the table's)");
    check->add_option("--require", require, "Properties that must hold (comma-separated)");
    common(check);

    auto* synth = app.add_subcommand("synth", "Extend unary and binary parts");
    synth->add_option("file", input, "Parts file")->required();
    synth->add_option("--horizon", horizon, "Horizon of the output table (default 4)");
    synth->add_option("--mode", mode, "assoc or preassoc")->check(CLI::IsMember({"assoc", "preassoc"}));
    synth->add_option("--g", g_path, "Quasi-inverse of F1 (preassoc mode)");
    common(synth);

    auto* qinv = app.add_subcommand("qinv", "Enumerate the quasi-inverses of a unary map");
    qinv->add_option("file", input, "Unary map file")->required();
    common(qinv);

    auto* demo = app.add_subcommand("demo", "Reproduce a worked example");
    demo->add_option("name", name, "Demo name")->required()->check(CLI::IsMember(demo_names()));
    demo->add_option("--param", params, "Parameter key=value");
    common(demo);

    auto* family = app.add_subcommand("family", "Sampled checks on a real-valued family");
    family->add_option("name", name, "Family name")->required()->check(CLI::IsMember(real::family_names()));
    family->add_option("--param", params, "Parameter key=value");
    family->add_option("--samples", samples, "Number of samples per check");
    family->add_option("--require", require, "Properties that must hold (comma-separated)");
    common(family);

    try {
      std::reverse(args.begin(), args.end());
      app.parse(std::move(args));
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return pass;
    } catch (CLI::ParseError const& e) {
      err << e.what() << '\n';
      return input_error;
    }

    try {
      m.output_path = out_path;
      if (check->parsed()) {
        m.command = "check";
        m.inputs  = {input};
        detail::validate(m);
        return cmd_check(m, detail::split(require), horizon, out);
      } else if (synth->parsed()) {
        m.command = "synth";
        m.inputs  = {input};
        if (g_path) {
          m.inputs.push_back(*g_path);
        }
        m.horizon = horizon.value_or(4);
        detail::validate(m);
        return cmd_synth(m, mode, g_path, out);
      } else if (qinv->parsed()) {
        m.command = "qinv";
        m.inputs  = {input};
        detail::validate(m);
        return cmd_qinv(m, out);
      } else if (demo->parsed()) {
        m.command = "demo";
        m.inputs  = {name};
        detail::validate(m);
        return cmd_demo(m, name, detail::parse_params(params), out);
      } else {
        m.command = "family";
        m.inputs  = {name};
        m.inputs.insert(m.inputs.end(), params.begin(), params.end());
        detail::validate(m);
        return cmd_family(m, name, detail::parse_params(params), samples, detail::split(require), out);
      }
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return input_error;
    }
  }

}  // namespace preassoc::cli
