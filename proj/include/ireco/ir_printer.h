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

#ifndef IRECO_IR_PRINTER_H_
#define IRECO_IR_PRINTER_H_

#include <string>

#include "ireco/ir.h"

namespace ireco {

// Canonical text. Nodes appear in topological order with ties broken by id,
// and operands of commutative ops are sorted by id, so two packages that
// differ only in declaration order or commutative operand order print
// identically. Requires a validated package.
std::string PrintIr(const Package& pkg);
std::string PrintFunction(const Function& f, bool mark_top = false);
std::string PrintNode(const Node& node, bool is_return);

}  // namespace ireco

#endif  // IRECO_IR_PRINTER_H_
