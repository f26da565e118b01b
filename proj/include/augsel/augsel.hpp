// augsel/augsel.hpp
//
// Copyright 2026 The augsel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header.

#pragma once

#include "augsel/analysis.hpp"
#include "augsel/aug_params.hpp"
#include "augsel/contrastive.hpp"
#include "augsel/dataset.hpp"
#include "augsel/effects.hpp"
#include "augsel/errors.hpp"
#include "augsel/fft.hpp"
#include "augsel/kernels.hpp"
#include "augsel/mel.hpp"
#include "augsel/rng.hpp"
#include "augsel/selector.hpp"
#include "augsel/synthetic.hpp"
#include "augsel/trainer.hpp"
#include "augsel/waveform.hpp"

namespace augsel {
inline constexpr const char* kVersion = "0.1.0";
}
