#pragma once

#include "cli.hpp"
#include "construct.hpp"
#include "core.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "quasi_inverse.hpp"
#include "real_families.hpp"
