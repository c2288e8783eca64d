// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ccra/ballot.hpp"
#include "ccra/common.hpp"
#include "ccra/json_io.hpp"
#include "ccra/model.hpp"
#include "ccra/preprocess.hpp"
#include "ccra/reductions.hpp"
#include "ccra/solution.hpp"
#include "ccra/solvers/brute_force.hpp"
#include "ccra/solvers/fptas.hpp"
#include "ccra/solvers/solve.hpp"
#include "ccra/solvers/tree_dp.hpp"
#include "ccra/solvers/xp.hpp"
#include "ccra/tally.hpp"
#include "ccra/toolkit/bench.hpp"
#include "ccra/toolkit/generate.hpp"
#include "ccra/unravel.hpp"
