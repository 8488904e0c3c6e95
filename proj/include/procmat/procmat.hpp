// Copyright 2026 The procmat developers
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

#include "procmat/covariant.hpp"
#include "procmat/game.hpp"
#include "procmat/json_io.hpp"
#include "procmat/operator.hpp"
#include "procmat/process.hpp"
#include "procmat/random.hpp"
#include "procmat/twirl.hpp"
#include "procmat/witness.hpp"

namespace procmat {

inline const char* version() { return "0.1.0"; }

}  // namespace procmat
