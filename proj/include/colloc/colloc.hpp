#pragma once

#include "colloc/error.hpp"
#include "colloc/polynomial.hpp"
#include "colloc/quadrature.hpp"
#include "colloc/spectra.hpp"
#include "colloc/tableau.hpp"
#include "colloc/verify.hpp"
