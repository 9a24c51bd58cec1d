// JSON formats for tabulated functions, unary maps, unary/binary part
// definitions and check reports.
//
// Table file:
//
//   {"carrier": ["a", "b"],
//    "codomain": {"values": ["a", "b"], "epsilon": true},
//    "horizon": 3,
//    "table": {"": null, "a": "a", "b": "b", "a,b": "a", ...}}
//
// Words are letters joined by "," with "" for ε; the value ε is null.
// Sets (carriers excepted) are either a list of names or an object with
// "values" and "epsilon". Unknown fields are rejected.

#pragma once

#include <charconv>    // for to_chars
#include <cstdint>     // for uint64_t
#include <fstream>     // for ifstream
#include <functional>  // for function
#include <optional>    // for optional
#include <set>         // for set
#include <sstream>     // for stringstream
#include <string>      // for string
#include <vector>      // for vector

#include "core.hpp"
#include "json.hpp"

namespace preassoc::io {

  using json = nlohmann::ordered_json;

  class FormatError : public Error {
   public:
    using Error::Error;
  };

  namespace detail {
    inline void only_fields(json const&                     j,
                            std::vector<std::string> const& allowed,
                            std::string const&              where) {
      if (!j.is_object()) {
        throw FormatError(where + ": expected an object");
      }
      for (auto const& [k, v] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
          throw FormatError(where + ": unknown field \"" + k + "\"");
        }
      }
    }

    inline json const& field(json const& j, std::string const& k, std::string const& where) {
      if (!j.contains(k)) {
        throw FormatError(where + ": missing field \"" + k + "\"");
      }
      return j.at(k);
    }

    inline std::vector<std::string> names(json const& j, std::string const& where) {
      if (!j.is_array()) {
        throw FormatError(where + ": expected a list of strings");
      }
      std::vector<std::string> out;
      for (auto const& s : j) {
        if (!s.is_string()) {
          throw FormatError(where + ": expected a list of strings");
        }
        out.push_back(s.get<std::string>());
      }
      return out;
    }

    // Rethrow validation errors of the core types as format errors.
    template <typename F>
    auto wrap(std::string const& where, F&& f) {
      try {
        return f();
      } catch (FormatError const&) {
        throw;
      } catch (Error const& e) {
        std::string const what = e.what();
        throw FormatError(what.starts_with(where + ":") ? what : where + ": " + what);
      }
    }
  }  // namespace detail

  inline json read_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw FormatError(path + ": cannot open file");
    }
    try {
      return json::parse(in);
    } catch (json::parse_error const& e) {
      throw FormatError(path + ": " + e.what());
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Sets and values
  ////////////////////////////////////////////////////////////////////////

  inline Carrier carrier_from_json(json const& j) {
    return detail::wrap("carrier", [&] { return Carrier(detail::names(j, "carrier")); });
  }

  inline json to_json(Carrier const& x) {
    return x.symbols();
  }

  inline Codomain set_from_json(json const& j, std::string const& where) {
    return detail::wrap(where, [&] {
      if (j.is_array()) {
        return Codomain(detail::names(j, where), false);
      }
      detail::only_fields(j, {"values", "epsilon"}, where);
      auto const& e = detail::field(j, "epsilon", where);
      if (!e.is_boolean()) {
        throw FormatError(where + ": \"epsilon\" must be a boolean");
      }
      return Codomain(detail::names(detail::field(j, "values", where), where + ".values"),
                      e.get<bool>());
    });
  }

  inline json to_json(Codomain const& c) {
    return json{{"values", c.values()}, {"epsilon", c.has_epsilon()}};
  }

  inline value_type value_from_json(Codomain const& c, json const& j, std::string const& where) {
    if (j.is_null()) {
      if (!c.has_epsilon()) {
        throw FormatError(where + ": ε given but the set does not contain ε");
      }
      return c.epsilon();
    }
    if (!j.is_string()) {
      throw FormatError(where + ": expected a value name or null");
    }
    if (auto v = c.find(j.get<std::string>())) {
      return *v;
    }
    throw FormatError(where + ": unknown value \"" + j.get<std::string>() + "\"");
  }

  inline json value_to_json(Codomain const& c, value_type v) {
    if (c.is_epsilon(v)) {
      return nullptr;
    }
    return c.values().at(v);
  }

  // Keys of unary maps: the element name, "" for ε.
  inline value_type key_from_string(Codomain const& c, std::string const& k, std::string const& where) {
    if (k.empty()) {
      if (!c.has_epsilon()) {
        throw FormatError(where + ": key \"\" (ε) but the domain does not contain ε");
      }
      return c.epsilon();
    }
    if (auto v = c.find(k)) {
      return *v;
    }
    throw FormatError(where + ": unknown key \"" + k + "\"");
  }

  inline std::string key_to_string(Codomain const& c, value_type v) {
    return c.is_epsilon(v) ? std::string() : c.values().at(v);
  }

  ////////////////////////////////////////////////////////////////////////
  // Tabulated functions
  ////////////////////////////////////////////////////////////////////////

  inline TabulatedVariadic table_from_json(json const& j) {
    detail::only_fields(j, {"carrier", "codomain", "horizon", "table"}, "table file");
    auto x = carrier_from_json(detail::field(j, "carrier", "table file"));
    auto y = set_from_json(detail::field(j, "codomain", "table file"), "codomain");
    // an operation codomain listed in another order is put in carrier order
    if (y.has_epsilon()
        && std::set(y.values().begin(), y.values().end())
               == std::set(x.symbols().begin(), x.symbols().end())) {
      y = Codomain::operations_on(x);
    }
    auto const& h = detail::field(j, "horizon", "table file");
    if (!h.is_number_unsigned() || h.get<std::size_t>() < TabulatedVariadic::minimum_horizon) {
      throw FormatError("horizon: expected an integer ≥ 2");
    }
    auto const  horizon = h.get<std::size_t>();
    auto const& t       = detail::field(j, "table", "table file");
    if (!t.is_object()) {
      throw FormatError("table: expected an object mapping words to values");
    }
    WordIndexer idx(x.size(), horizon);
    if (t.size() != idx.size()) {
      throw FormatError("table: has " + std::to_string(t.size()) + " entries, expected "
                        + std::to_string(idx.size()) + " (every word of length ≤ "
                        + std::to_string(horizon) + ")");
    }
    std::vector<value_type> values(idx.size());
    std::vector<bool>       seen(idx.size(), false);
    for (auto const& [k, v] : t.items()) {
      auto w = detail::wrap("table word \"" + k + "\"", [&] { return parse_word(x, k); });
      if (w.size() > horizon) {
        throw FormatError("table word \"" + k + "\": longer than the horizon");
      }
      auto i = idx.index(w);
      if (seen[i]) {
        throw FormatError("table word \"" + k + "\": given twice");
      }
      seen[i]   = true;
      values[i] = value_from_json(y, v, "table word \"" + k + "\"");
    }
    return TabulatedVariadic(std::move(x), std::move(y), horizon, std::move(values));
  }

  inline json to_json(TabulatedVariadic const& f) {
    json t = json::object();
    for (std::size_t i = 0; i < f.number_of_words(); ++i) {
      t[to_string(f.carrier(), f.indexer().word(i))] = value_to_json(f.codomain(), f.at(i));
    }
    return json{{"carrier", to_json(f.carrier())},
                {"codomain", to_json(f.codomain())},
                {"horizon", f.horizon()},
                {"table", std::move(t)}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Unary maps
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::vector<value_type> map_entries(Codomain const&    dom,
                                               Codomain const&    cod,
                                               json const&        m,
                                               std::string const& where) {
      if (!m.is_object()) {
        throw FormatError(where + ": expected an object");
      }
      std::vector<value_type>         t(dom.size());
      std::vector<bool>               seen(dom.size(), false);
      for (auto const& [k, v] : m.items()) {
        auto i = key_from_string(dom, k, where);
        if (seen[i]) {
          throw FormatError(where + ": key \"" + k + "\" given twice");
        }
        seen[i] = true;
        t[i]    = value_from_json(cod, v, where + "[\"" + k + "\"]");
      }
      for (value_type i = 0; i < dom.size(); ++i) {
        if (!seen[i]) {
          throw FormatError(where + ": no value for \"" + key_to_string(dom, i) + "\"");
        }
      }
      return t;
    }
  }  // namespace detail

  // {"domain": set, "codomain": set, "map": {key: value}}
  inline UnaryMap unary_map_from_json(json const& j) {
    detail::only_fields(j, {"domain", "codomain", "map"}, "unary map");
    auto dom = set_from_json(detail::field(j, "domain", "unary map"), "domain");
    auto cod = set_from_json(detail::field(j, "codomain", "unary map"), "codomain");
    auto t   = detail::map_entries(dom, cod, detail::field(j, "map", "unary map"), "map");
    return UnaryMap(std::move(dom), std::move(cod), std::move(t));
  }

  inline json to_json(UnaryMap const& f) {
    json m = json::object();
    for (value_type i = 0; i < f.domain().size(); ++i) {
      m[key_to_string(f.domain(), i)] = value_to_json(f.codomain(), f(i));
    }
    return json{{"domain", to_json(f.domain())},
                {"codomain", to_json(f.codomain())},
                {"map", std::move(m)}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Part definitions
  ////////////////////////////////////////////////////////////////////////

  // Nullary, unary and binary parts of a variadic function:
  //
  //   {"carrier": [...], "codomain": set (default: the carrier),
  //    "nullary": value (optional), "unary": {"a": v, ...},
  //    "binary": {"a,b": v, ...}}
  struct PartsDefinition {
    Carrier                   carrier;
    Codomain                  codomain;
    std::optional<value_type> nullary;
    UnaryMap                  unary;
    BinaryMap                 binary;
  };

  inline PartsDefinition parts_from_json(json const& j) {
    detail::only_fields(j, {"carrier", "codomain", "nullary", "unary", "binary"}, "parts file");
    auto x = carrier_from_json(detail::field(j, "carrier", "parts file"));
    auto y = j.contains("codomain") ? set_from_json(j.at("codomain"), "codomain") : Codomain::of(x);
    std::optional<value_type> f0;
    if (j.contains("nullary")) {
      f0 = value_from_json(y, j.at("nullary"), "nullary");
    }
    auto u = detail::map_entries(
        Codomain::of(x), y, detail::field(j, "unary", "parts file"), "unary");
    auto const& b = detail::field(j, "binary", "parts file");
    if (!b.is_object()) {
      throw FormatError("binary: expected an object");
    }
    auto const              n = x.size();
    std::vector<value_type> bt(n * n);
    std::vector<bool>       seen(n * n, false);
    for (auto const& [k, v] : b.items()) {
      auto w = detail::wrap("binary word \"" + k + "\"", [&] { return parse_word(x, k); });
      if (w.size() != 2) {
        throw FormatError("binary word \"" + k + "\": expected two letters");
      }
      auto i = w[0] * n + w[1];
      if (seen[i]) {
        throw FormatError("binary word \"" + k + "\": given twice");
      }
      seen[i] = true;
      bt[i]   = value_from_json(y, v, "binary word \"" + k + "\"");
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw FormatError("binary: every pair of letters needs a value");
    }
    UnaryMap  f1(Codomain::of(x), y, std::move(u));
    BinaryMap f2(x, y, std::move(bt));
    return {std::move(x), std::move(y), f0, std::move(f1), std::move(f2)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Reports
  ////////////////////////////////////////////////////////////////////////

  using word_renderer = std::function<std::string(word_type const&)>;

  inline word_renderer render_over(Carrier const& x) {
    return [x](word_type const& w) { return to_string(x, w); };
  }

  inline json to_json(CheckReport const& r, word_renderer const& render, std::uint64_t seed) {
    json w = json::array();
    for (auto const& word : r.witness) {
      w.push_back(render(word));
    }
    json out{{"property", r.property},
             {"verdict", r.verdict},
             {"witness", std::move(w)},
             {"horizon", r.horizon_used},
             {"seed", seed}};
    if (!r.detail.empty()) {
      out["detail"] = r.detail;
    }
    return out;
  }

  // Shortest round-trip decimal form of each letter, comma-joined.
  inline std::string to_string(std::vector<double> const& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      char buf[32];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, w[i]);
      out += (i == 0 ? "" : ",") + std::string(buf, end);
    }
    return out;
  }

  inline json to_json(BasicCheckReport<std::vector<double>> const& r, std::uint64_t seed) {
    json ws = json::array();
    for (auto const& w : r.witness) {
      ws.push_back(to_string(w));
    }
    json out{{"property", r.property},
             {"verdict", r.verdict},
             {"witness", std::move(ws)},
             {"horizon", r.horizon_used},
             {"seed", seed}};
    if (!r.detail.empty()) {
      out["detail"] = r.detail;
    }
    return out;
  }


}  // namespace preassoc::io
