// Copyright 2026 The ireco Authors
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

#ifndef IRECO_IR_HASH_H_
#define IRECO_IR_HASH_H_

#include <string>
#include <string_view>

#include "ireco/ir.h"

namespace ireco {

// Lower-case hex SHA-256 of arbitrary bytes.
std::string Sha256Hex(std::string_view bytes);

// Digest of the canonical printed form; binds patches to their base IR.
std::string IrHash(const Package& pkg);

}  // namespace ireco

#endif  // IRECO_IR_HASH_H_
