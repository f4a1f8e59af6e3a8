// Copyright 2026 The lindsieve Authors
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

#include <doctest.h>

#include "lindsieve/error.hpp"

// Runs `expr` and checks that it throws lindsieve::Error with the given code.
#define CHECK_THROWS_CODE(expr, expected)                                    \
  do {                                                                       \
    bool thrown_ = false;                                                    \
    try {                                                                    \
      (void)(expr);                                                          \
    } catch (const lindsieve::Error& e_) {                                   \
      thrown_ = true;                                                        \
      CHECK(e_.code() == (expected));                                        \
    }                                                                        \
    CHECK_MESSAGE(thrown_, "expected lindsieve::Error from " #expr);         \
  } while (0)
