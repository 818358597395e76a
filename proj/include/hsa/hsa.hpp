/* Copyright 2026 The HSA Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include "hsa/audit.hpp"
#include "hsa/code_design.hpp"
#include "hsa/error.hpp"
#include "hsa/gf.hpp"
#include "hsa/key_design.hpp"
#include "hsa/parallel.hpp"
#include "hsa/protocol.hpp"
#include "hsa/random.hpp"
#include "hsa/rates.hpp"
#include "hsa/topology.hpp"
