#pragma once

// Umbrella header.

#include "axioms.hpp"     // IWYU pragma: export
#include "baselines.hpp"  // IWYU pragma: export
#include "core.hpp"       // IWYU pragma: export
#include "json.hpp"       // IWYU pragma: export
#include "oracle.hpp"     // IWYU pragma: export
#include "random.hpp"     // IWYU pragma: export
#include "solver.hpp"     // IWYU pragma: export
