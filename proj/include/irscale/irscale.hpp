/*
 * Copyright 2026 The irscale Authors.
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

#ifndef IRSCALE_IRSCALE_HPP
#define IRSCALE_IRSCALE_HPP

#include "irscale/analysis.hpp"
#include "irscale/error.hpp"
#include "irscale/meaningfulness.hpp"
#include "irscale/measures.hpp"
#include "irscale/report.hpp"
#include "irscale/scales.hpp"
#include "irscale/serp.hpp"
#include "irscale/statement_parser.hpp"
#include "irscale/stats.hpp"
#include "irscale/trec.hpp"

#endif  // IRSCALE_IRSCALE_HPP
