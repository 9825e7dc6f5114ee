#pragma once

#include "eisenstein.hpp"
#include "gaussian.hpp"
#include "hyperbolic.hpp"
#include "microlocal.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "special.hpp"
#include "su2.hpp"
#include "suites.hpp"
#include "zeta.hpp"
