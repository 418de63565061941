#pragma once

#include "ngeo/rational.hpp"
#include "oracles.hpp"

inline ngeo::Rational to_rational(oracle::Frac f) { return {f.num, f.den}; }
