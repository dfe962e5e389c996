#pragma once

// Umbrella header.

#include "polycanon/circle.hpp"
#include "polycanon/json_io.hpp"
#include "polycanon/levinson.hpp"
#include "polycanon/linalg.hpp"
#include "polycanon/mixed_powers.hpp"
#include "polycanon/multi_series.hpp"
#include "polycanon/poly.hpp"
#include "polycanon/random_gen.hpp"
#include "polycanon/root_operators.hpp"
#include "polycanon/scalar.hpp"
#include "polycanon/uni_series.hpp"
#include "polycanon/uniqueness.hpp"
#include "polycanon/weierstrass.hpp"
