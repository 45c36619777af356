#pragma once

// Umbrella header: the whole library.

#include "heinslab/calculus.hpp"
#include "heinslab/domain.hpp"
#include "heinslab/dynamics.hpp"
#include "heinslab/errors.hpp"
#include "heinslab/expr.hpp"
#include "heinslab/fixtures.hpp"
#include "heinslab/heins.hpp"
#include "heinslab/mapfile.hpp"
#include "heinslab/matrix.hpp"
#include "heinslab/report.hpp"
#include "heinslab/rng.hpp"
#include "heinslab/types.hpp"
#include "heinslab/verify.hpp"
