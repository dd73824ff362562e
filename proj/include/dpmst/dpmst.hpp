// Copyright 2026 The dpmst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "dpmst/audit.hpp"
#include "dpmst/errors.hpp"
#include "dpmst/experiments.hpp"
#include "dpmst/generators.hpp"
#include "dpmst/graph.hpp"
#include "dpmst/io.hpp"
#include "dpmst/linalg.hpp"
#include "dpmst/lower_bounds.hpp"
#include "dpmst/mechanisms.hpp"
#include "dpmst/mst.hpp"
#include "dpmst/rng.hpp"
#include "dpmst/sampler.hpp"
#include "dpmst/tree_count.hpp"
#include "dpmst/tree_space.hpp"
