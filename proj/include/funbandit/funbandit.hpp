// Copyright 2026 The funbandit Authors
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

#ifndef FUNBANDIT_FUNBANDIT_HPP
#define FUNBANDIT_FUNBANDIT_HPP

#include "funbandit/bounds.hpp"
#include "funbandit/config.hpp"
#include "funbandit/distributions.hpp"
#include "funbandit/elimination.hpp"
#include "funbandit/errors.hpp"
#include "funbandit/estimators.hpp"
#include "funbandit/functional.hpp"
#include "funbandit/harness.hpp"
#include "funbandit/report_io.hpp"
#include "funbandit/rng.hpp"

#endif  // FUNBANDIT_FUNBANDIT_HPP
