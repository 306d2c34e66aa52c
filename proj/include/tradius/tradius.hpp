// Copyright 2026 The tradius Authors
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

#include "tradius/consensus.hpp"
#include "tradius/dynamics.hpp"
#include "tradius/errors.hpp"
#include "tradius/failure_model.hpp"
#include "tradius/graph.hpp"
#include "tradius/if_graph.hpp"
#include "tradius/lower_bound.hpp"
#include "tradius/node_set.hpp"
#include "tradius/parallel.hpp"
#include "tradius/radius.hpp"
#include "tradius/union_find.hpp"
