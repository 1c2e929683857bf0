// Copyright 2026 The qio developers
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

#include "qio/canonical.hpp"
#include "qio/channel.hpp"
#include "qio/classify.hpp"
#include "qio/complex_matrix.hpp"
#include "qio/decompose.hpp"
#include "qio/errors.hpp"
#include "qio/reduce.hpp"
#include "qio/rng.hpp"
#include "qio/sampler.hpp"
#include "qio/serialization.hpp"
