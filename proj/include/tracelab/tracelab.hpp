#pragma once

// Everything except the report layer (lab.hpp, acceptance.hpp), which also
// needs nlohmann/json.

#include "error.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "linalg.hpp"
#include "curve.hpp"
#include "divisor.hpp"
#include "series.hpp"
#include "function.hpp"
#include "ring.hpp"
#include "zeta.hpp"
#include "picard.hpp"
#include "lseries.hpp"
#include "hecke.hpp"
#include "cover.hpp"
#include "twisted.hpp"
#include "hitchin.hpp"
