// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Umbrella header for the submod library: maximization of objectives
// Psi(f, g) built from two monotone submodular set functions, including
// ratio (f/g) and difference (f-g) objectives, greedy solvers, bisection
// reductions between the two problem families, the ModMod baseline, and an
// influence-maximization-with-costs benchmark.

#include "submod/analysis.hpp"
#include "submod/combiner.hpp"
#include "submod/experiment.hpp"
#include "submod/greedy.hpp"
#include "submod/influence.hpp"
#include "submod/instance_io.hpp"
#include "submod/modmod.hpp"
#include "submod/random.hpp"
#include "submod/reductions.hpp"
#include "submod/set_function.hpp"
#include "submod/subset.hpp"
