// Copyright 2026 The nestnet authors
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

#include "nestnet/bisection.hpp"
#include "nestnet/common.hpp"
#include "nestnet/compose.hpp"
#include "nestnet/edgelist.hpp"
#include "nestnet/generators.hpp"
#include "nestnet/graph.hpp"
#include "nestnet/metrics.hpp"
#include "nestnet/product.hpp"
#include "nestnet/routing_model.hpp"
#include "nestnet/routing_table.hpp"
#include "nestnet/search.hpp"
#include "nestnet/sim.hpp"
#include "nestnet/solvers.hpp"
