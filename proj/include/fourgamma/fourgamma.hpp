#pragma once

#include "fourgamma/core.hpp"
#include "fourgamma/four_gamma.hpp"
#include "fourgamma/gamma_basics.hpp"
#include "fourgamma/hypergeom.hpp"
#include "fourgamma/identities.hpp"
#include "fourgamma/quadrature.hpp"
#include "fourgamma/series.hpp"
