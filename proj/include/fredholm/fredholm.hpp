#pragma once

#include "fredholm/bernoulli.hpp"
#include "fredholm/errors.hpp"
#include "fredholm/expr.hpp"
#include "fredholm/galerkin.hpp"
#include "fredholm/polynomial.hpp"
#include "fredholm/problem_io.hpp"
#include "fredholm/quadrature.hpp"
#include "fredholm/rational.hpp"
#include "fredholm/report.hpp"
