// Copyright 2026 The spinent Authors
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

#ifndef SPINENT_SPINENT_HPP
#define SPINENT_SPINENT_HPP

#include "spinent/criteria.hpp"
#include "spinent/gaussian.hpp"
#include "spinent/moments.hpp"
#include "spinent/network_config.hpp"
#include "spinent/optimizer.hpp"
#include "spinent/oracle.hpp"
#include "spinent/presets.hpp"
#include "spinent/qudit.hpp"
#include "spinent/spin_algebra.hpp"
#include "spinent/types.hpp"

#endif  // SPINENT_SPINENT_HPP
