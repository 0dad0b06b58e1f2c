/*
 * Copyright 2026 The bibcount Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Umbrella header.
#ifndef BIBCOUNT_BIBCOUNT_HPP_
#define BIBCOUNT_BIBCOUNT_HPP_

#include "bibcount/aggregate.hpp"
#include "bibcount/attribution.hpp"
#include "bibcount/classify.hpp"
#include "bibcount/corpus.hpp"
#include "bibcount/error.hpp"
#include "bibcount/generate.hpp"
#include "bibcount/harness.hpp"
#include "bibcount/npi.hpp"
#include "bibcount/numeric.hpp"
#include "bibcount/registry.hpp"
#include "bibcount/scorefn.hpp"

#endif  // BIBCOUNT_BIBCOUNT_HPP_
