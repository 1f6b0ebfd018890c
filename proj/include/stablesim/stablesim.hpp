// Copyright 2026 The stablesim Authors.
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

#ifndef STABLESIM_STABLESIM_HPP_
#define STABLESIM_STABLESIM_HPP_

#include "stablesim/batch.hpp"
#include "stablesim/errors.hpp"
#include "stablesim/mittag_leffler.hpp"
#include "stablesim/params.hpp"
#include "stablesim/processes.hpp"
#include "stablesim/random_stream.hpp"
#include "stablesim/serialize.hpp"
#include "stablesim/stable.hpp"
#include "stablesim/statcheck.hpp"
#include "stablesim/verify.hpp"

#endif  // STABLESIM_STABLESIM_HPP_
