// Copyright 2026 The PQCR Authors
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

#ifndef PQCR_PQCR_HPP_
#define PQCR_PQCR_HPP_

#include "pqcr/error.hpp"
#include "pqcr/polynomial.hpp"
#include "pqcr/quadratization.hpp"
#include "pqcr/equalities.hpp"
#include "pqcr/sdp.hpp"
#include "pqcr/qp_solver.hpp"
#include "pqcr/reformulation.hpp"
#include "pqcr/bnb.hpp"

#endif  // PQCR_PQCR_HPP_
