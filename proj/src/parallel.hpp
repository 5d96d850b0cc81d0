// SPDX-License-Identifier: Apache-2.0
//
// tcsl: time-cluster spatial-lobe channel simulator
// Copyright (C) 2026 The tcsl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#if defined(_OPENMP)
#include <omp.h>
#define TCSL_HAS_OPENMP 1
#else
#define TCSL_HAS_OPENMP 0
inline int omp_get_thread_num() { return 0; }
inline int omp_get_max_threads() { return 1; }
#endif

namespace tcsl::detail
{

// Clamp a requested worker count to >= 1; 0 means "runtime default"
inline int resolve_workers(int requested)
{
    if (requested <= 0)
        return omp_get_max_threads();
    return requested;
}

} // namespace tcsl::detail
