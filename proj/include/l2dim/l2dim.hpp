// Copyright 2026 The l2dim Authors
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

#include "l2dim/betti.hpp"
#include "l2dim/cayley_complex.hpp"
#include "l2dim/linalg.hpp"
#include "l2dim/rational.hpp"
#include "l2dim/realization.hpp"
#include "l2dim/sparse_matrix.hpp"
#include "l2dim/truncation.hpp"
#include "l2dim/words.hpp"
