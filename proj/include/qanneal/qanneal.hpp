// Copyright 2026 The qanneal Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

/// @file qanneal.hpp
/// @brief Umbrella header.

#pragma once

#include "qanneal/analysis.hpp"
#include "qanneal/chimera.hpp"
#include "qanneal/error.hpp"
#include "qanneal/frontends.hpp"
#include "qanneal/pbf.hpp"
#include "qanneal/qubo_ising.hpp"
#include "qanneal/random.hpp"
#include "qanneal/reduce.hpp"
#include "qanneal/solvers.hpp"
