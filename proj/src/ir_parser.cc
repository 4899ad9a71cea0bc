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

#include "ireco/ir_parser.h"

#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ireco/errors.h"
#include "ireco/ir_validate.h"
#include "ireco/status_macros.h"

namespace ireco {
namespace {

enum class TokenKind { kIdent, kNumber, kPunct, kArrow, kEnd };

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int col;
};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

absl::Status SyntaxError(int line, int col, const std::string& message) {
  return MakeError(ErrorKind::kSyntaxError, std::to_string(line) + ":" +
                                                std::to_string(col) + ": " +
                                                message);
}

absl::StatusOr<std::vector<Token>> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  int col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const int start_line = line;
    const int start_col = col;
    if (IsIdentStart(c)) {
      size_t j = i;
      while (j < text.size() && IsIdentChar(text[j])) ++j;
      tokens.push_back({TokenKind::kIdent, std::string(text.substr(i, j - i)),
                        start_line, start_col});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])))) {
        ++j;
      }
      tokens.push_back({TokenKind::kNumber, std::string(text.substr(i, j - i)),
                        start_line, start_col});
      advance(j - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      tokens.push_back({TokenKind::kArrow, "->", start_line, start_col});
      advance(2);
    } else if (std::string_view("(){}[],:=").find(c) != std::string_view::npos) {
      tokens.push_back({TokenKind::kPunct, std::string(1, c), start_line,
                        start_col});
      advance(1);
    } else {
      return SyntaxError(start_line, start_col,
                         std::string("unexpected character '") + c + "'");
    }
  }
  tokens.push_back({TokenKind::kEnd, "", line, col});
  return tokens;
}

std::optional<uint64_t> ParseUnsigned(const std::string& text) {
  int base = 10;
  std::string_view digits = text;
  if (digits.size() > 2 && digits[0] == '0' &&
      (digits[1] == 'x' || digits[1] == 'X')) {
    base = 16;
    digits.remove_prefix(2);
  } else if (digits.size() > 2 && digits[0] == '0' &&
             (digits[1] == 'b' || digits[1] == 'B')) {
    base = 2;
    digits.remove_prefix(2);
  }
  uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    return std::nullopt;
  }
  return value;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  absl::StatusOr<Package> ParsePackage() {
    Package pkg;
    if (Peek().kind == TokenKind::kIdent && Peek().text == "package") {
      Next();
      IRECO_ASSIGN_OR_RETURN(pkg.name, ExpectIdent("package name"));
    }
    std::vector<std::string> tops;
    while (Peek().kind != TokenKind::kEnd) {
      bool is_top = false;
      if (Peek().kind == TokenKind::kIdent && Peek().text == "top") {
        Next();
        is_top = true;
      }
      IRECO_ASSIGN_OR_RETURN(Function f, ParseFunction());
      if (is_top) tops.push_back(f.name);
      pkg.functions.push_back(std::move(f));
    }
    if (pkg.functions.empty()) {
      return SyntaxError(Peek().line, Peek().col, "expected 'fn'");
    }
    if (tops.size() > 1) {
      return MakeError(ErrorKind::kValidationError,
                       "more than one function is marked top");
    }
    if (!tops.empty()) {
      pkg.top = tops.front();
    } else if (pkg.functions.size() == 1) {
      pkg.top = pkg.functions.front().name;
    } else {
      return MakeError(ErrorKind::kValidationError,
                       "multiple functions but none is marked top");
    }
    return pkg;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool TryPunct(char c) {
    if (Peek().kind == TokenKind::kPunct && Peek().text[0] == c) {
      Next();
      return true;
    }
    return false;
  }

  absl::Status Unexpected(const std::string& expected) const {
    const Token& t = Peek();
    std::string found = t.kind == TokenKind::kEnd ? "end of input"
                                                  : "'" + t.text + "'";
    return SyntaxError(t.line, t.col, "expected " + expected + ", found " + found);
  }

  absl::Status ExpectPunct(char c) {
    if (TryPunct(c)) return absl::OkStatus();
    return Unexpected(std::string("'") + c + "'");
  }

  absl::StatusOr<std::string> ExpectIdent(const std::string& what) {
    if (Peek().kind != TokenKind::kIdent) return Unexpected(what);
    return Next().text;
  }

  absl::StatusOr<uint64_t> ExpectNumber(const std::string& what) {
    if (Peek().kind != TokenKind::kNumber) return Unexpected(what);
    const Token& t = Next();
    std::optional<uint64_t> value = ParseUnsigned(t.text);
    if (!value.has_value()) {
      return SyntaxError(t.line, t.col, "malformed number '" + t.text + "'");
    }
    return *value;
  }

  absl::StatusOr<DataType> ParseType() {
    const Token& t = Peek();
    if (t.kind != TokenKind::kIdent || t.text != "bits") return Unexpected("'bits'");
    Next();
    IRECO_RETURN_IF_ERROR(ExpectPunct('['));
    IRECO_ASSIGN_OR_RETURN(uint64_t width, ExpectNumber("bit width"));
    IRECO_RETURN_IF_ERROR(ExpectPunct(']'));
    if (width == 0) return SyntaxError(t.line, t.col, "bit width must be >= 1");
    return DataType{static_cast<int64_t>(width)};
  }

  absl::StatusOr<Function> ParseFunction() {
    if (Peek().kind != TokenKind::kIdent || Peek().text != "fn") {
      return Unexpected("'fn'");
    }
    Next();
    Function f;
    IRECO_ASSIGN_OR_RETURN(f.name, ExpectIdent("function name"));
    IRECO_RETURN_IF_ERROR(ExpectPunct('('));
    if (!TryPunct(')')) {
      do {
        Node param;
        param.op = OpKind::kParam;
        IRECO_ASSIGN_OR_RETURN(param.id, ExpectIdent("param name"));
        IRECO_RETURN_IF_ERROR(ExpectPunct(':'));
        IRECO_ASSIGN_OR_RETURN(param.type, ParseType());
        f.params.push_back(param.id);
        f.nodes.push_back(std::move(param));
      } while (TryPunct(','));
      IRECO_RETURN_IF_ERROR(ExpectPunct(')'));
    }
    if (Peek().kind != TokenKind::kArrow) return Unexpected("'->'");
    Next();
    const Token ret_type_token = Peek();
    IRECO_ASSIGN_OR_RETURN(DataType ret_type, ParseType());
    IRECO_RETURN_IF_ERROR(ExpectPunct('{'));
    while (!TryPunct('}')) {
      if (Peek().kind == TokenKind::kEnd) return Unexpected("'}'");
      IRECO_RETURN_IF_ERROR(ParseNode(f));
    }
    const Node* ret = f.FindNode(f.return_node);
    if (ret != nullptr && ret->type != ret_type) {
      return MakeError(ErrorKind::kValidationError,
                       "WidthMismatch(" + f.return_node +
                           "): declared return type " + ret_type.ToString() +
                           " differs from node type " + ret->type.ToString() +
                           " at " + std::to_string(ret_type_token.line) + ":" +
                           std::to_string(ret_type_token.col));
    }
    return f;
  }

  absl::Status ParseNode(Function& f) {
    bool is_ret = false;
    if (Peek().kind == TokenKind::kIdent && Peek().text == "ret") {
      Next();
      is_ret = true;
    }
    Node node;
    IRECO_ASSIGN_OR_RETURN(node.id, ExpectIdent("node id"));
    IRECO_RETURN_IF_ERROR(ExpectPunct(':'));
    IRECO_ASSIGN_OR_RETURN(node.type, ParseType());
    IRECO_RETURN_IF_ERROR(ExpectPunct('='));
    const Token op_token = Peek();
    IRECO_ASSIGN_OR_RETURN(std::string op_name, ExpectIdent("op name"));
    std::optional<OpKind> op = OpKindFromName(op_name);
    if (!op.has_value() || *op == OpKind::kParam) {
      return SyntaxError(op_token.line, op_token.col,
                         "unknown op '" + op_name + "'");
    }
    node.op = *op;
    IRECO_RETURN_IF_ERROR(ExpectPunct('('));
    std::vector<std::string> positional;
    std::vector<std::string> cases;
    std::optional<std::string> default_value;
    bool saw_cases = false;
    std::set<std::string> seen_keys;
    if (!TryPunct(')')) {
      do {
        const Token arg = Peek();
        IRECO_ASSIGN_OR_RETURN(std::string name, ExpectIdent("operand or keyword"));
        if (!TryPunct('=')) {
          if (!seen_keys.empty()) {
            return SyntaxError(arg.line, arg.col,
                               "positional operand after keyword argument");
          }
          positional.push_back(name);
          continue;
        }
        if (!seen_keys.insert(name).second) {
          return SyntaxError(arg.line, arg.col, "duplicate keyword '" + name + "'");
        }
        if (node.op == OpKind::kSel && name == "cases") {
          saw_cases = true;
          IRECO_RETURN_IF_ERROR(ExpectPunct('['));
          if (!TryPunct(']')) {
            do {
              IRECO_ASSIGN_OR_RETURN(std::string c, ExpectIdent("case operand"));
              cases.push_back(c);
            } while (TryPunct(','));
            IRECO_RETURN_IF_ERROR(ExpectPunct(']'));
          }
        } else if (node.op == OpKind::kSel && name == "default") {
          IRECO_ASSIGN_OR_RETURN(default_value, ExpectIdent("default operand"));
        } else if (IsNumericKeyword(node.op, name)) {
          IRECO_ASSIGN_OR_RETURN(uint64_t value, ExpectNumber(name + " value"));
          node.attrs[name] = std::to_string(value);
        } else {
          return SyntaxError(arg.line, arg.col,
                             "keyword '" + name + "' is not valid for " + op_name);
        }
      } while (TryPunct(','));
      IRECO_RETURN_IF_ERROR(ExpectPunct(')'));
    }
    if (node.op == OpKind::kSel) {
      if (!saw_cases) {
        return SyntaxError(op_token.line, op_token.col, "sel requires cases=[...]");
      }
      node.operands = std::move(positional);
      node.operands.insert(node.operands.end(), cases.begin(), cases.end());
      if (default_value.has_value()) node.operands.push_back(*default_value);
      node.attrs["has_default"] = default_value.has_value() ? "true" : "false";
    } else {
      node.operands = std::move(positional);
    }
    if (is_ret) {
      if (!f.return_node.empty()) {
        return SyntaxError(op_token.line, op_token.col,
                           "function has more than one ret node");
      }
      f.return_node = node.id;
    }
    f.nodes.push_back(std::move(node));
    return absl::OkStatus();
  }

  static bool IsNumericKeyword(OpKind op, const std::string& name) {
    for (const std::string& key : RequiredAttrs(op)) {
      if (key == name && key != "has_default") return true;
    }
    return false;
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace

absl::StatusOr<Package> ParseIrUnvalidated(std::string_view text) {
  IRECO_ASSIGN_OR_RETURN(std::vector<Token> tokens, Tokenize(text));
  return Parser(std::move(tokens)).ParsePackage();
}

absl::StatusOr<Package> ParseIr(std::string_view text) {
  IRECO_ASSIGN_OR_RETURN(Package pkg, ParseIrUnvalidated(text));
  std::vector<Violation> violations = Validate(pkg);
  if (!violations.empty()) {
    std::string message;
    for (const Violation& v : violations) {
      if (!message.empty()) message += "; ";
      message += v.ToString();
    }
    const bool dangling = violations.front().rule == rules::kDanglingOperand;
    return MakeError(
        dangling ? ErrorKind::kDanglingOperand : ErrorKind::kValidationError,
        message);
  }
  return pkg;
}

}  // namespace ireco
