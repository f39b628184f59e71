// Copyright 2026 The cntqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CNTQC_CNTQC_HPP
#define CNTQC_CNTQC_HPP

#include "cntqc/bath.hpp"
#include "cntqc/bloch.hpp"
#include "cntqc/config.hpp"
#include "cntqc/constants.hpp"
#include "cntqc/csv.hpp"
#include "cntqc/device.hpp"
#include "cntqc/estimation.hpp"
#include "cntqc/ode.hpp"
#include "cntqc/ramsey.hpp"
#include "cntqc/rng.hpp"
#include "cntqc/spectrum.hpp"
#include "cntqc/wigner.hpp"

#endif  // CNTQC_CNTQC_HPP
