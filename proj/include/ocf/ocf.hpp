// Copyright 2026 The ocf Authors
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

#ifndef OCF_OCF_HPP
#define OCF_OCF_HPP

#include "ocf/arbitration.hpp"
#include "ocf/core.hpp"
#include "ocf/cover.hpp"
#include "ocf/decomposition.hpp"
#include "ocf/errors.hpp"
#include "ocf/gadgets.hpp"
#include "ocf/io.hpp"
#include "ocf/lbg.hpp"
#include "ocf/lp.hpp"
#include "ocf/oracle.hpp"
#include "ocf/rational.hpp"
#include "ocf/tree_solver.hpp"
#include "ocf/tw_solver.hpp"
#include "ocf/validate.hpp"

#endif  // OCF_OCF_HPP
