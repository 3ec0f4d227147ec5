#pragma once

#include "qeuler/classical.hpp"
#include "qeuler/context.hpp"
#include "qeuler/errors.hpp"
#include "qeuler/euler.hpp"
#include "qeuler/identity_lab.hpp"
#include "qeuler/integrator.hpp"
#include "qeuler/numbers.hpp"
#include "qeuler/padic.hpp"
#include "qeuler/polynomial.hpp"
#include "qeuler/qkit.hpp"
#include "qeuler/rational_function.hpp"
#include "qeuler/render.hpp"
