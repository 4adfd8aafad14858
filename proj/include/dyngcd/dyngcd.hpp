#pragma once

#include "dyngcd/arith.hpp"
#include "dyngcd/polynomial.hpp"
#include "dyngcd/rank.hpp"
#include "dyngcd/ord_cache.hpp"
#include "dyngcd/orbit.hpp"
#include "dyngcd/parallel.hpp"
#include "dyngcd/prime_lab.hpp"
#include "dyngcd/density.hpp"
#include "dyngcd/report.hpp"
#include "dyngcd/verify.hpp"
