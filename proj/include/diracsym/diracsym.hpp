#pragma once

#include "classical_flow.hpp"
#include "dirac_core.hpp"
#include "errors.hpp"
#include "fd.hpp"
#include "fields.hpp"
#include "matrix.hpp"
#include "ode.hpp"
#include "planewave.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "spectral_k.hpp"
#include "spin_transport.hpp"
#include "symbol_calculus.hpp"
#include "suites.hpp"
#include "runner.hpp"
