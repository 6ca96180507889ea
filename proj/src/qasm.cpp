/* Copyright 2026 The qcpart authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <cctype>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "qcp/circuit.hpp"
#include "qcp/errors.hpp"

namespace qcp {
namespace {

struct Token {
  enum class Kind { Ident, Number, Symbol, String, End } kind;
  std::string text;
  double value = 0.0;
  int line = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line_;
    if (pos_ >= src_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      t.kind = Token::Kind::Ident;
      t.text = src_.substr(start, pos_ - start);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src_.c_str() + pos_;
      char* end = nullptr;
      t.value = std::strtod(begin, &end);
      t.kind = Token::Kind::Number;
      t.text = std::string(begin, static_cast<std::size_t>(end - begin));
      pos_ += static_cast<std::size_t>(end - begin);
      return t;
    }
    if (c == '"') {
      std::size_t start = ++pos_;
      while (pos_ < src_.size() && src_[pos_] != '"') ++pos_;
      t.kind = Token::Kind::String;
      t.text = src_.substr(start, pos_ - start);
      if (pos_ < src_.size()) ++pos_;
      return t;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      pos_ += 2;
      t.kind = Token::Kind::Symbol;
      t.text = "->";
      return t;
    }
    t.kind = Token::Kind::Symbol;
    t.text = std::string(1, c);
    ++pos_;
    return t;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

const std::set<std::string>& supported_gates() {
  static const std::set<std::string> gates = {
      "h",  "x",  "y",  "z",  "s",  "sdg", "t",  "tdg", "rx", "ry", "rz",
      "u1", "u2", "u3", "u",  "p",  "cx",  "cz", "cp",  "cu1", "swap"};
  return gates;
}

int arity(const std::string& name) {
  if (name == "cx" || name == "cz" || name == "cp" || name == "cu1" || name == "swap")
    return 2;
  return 1;
}

int param_count(const std::string& name) {
  if (name == "rx" || name == "ry" || name == "rz" || name == "u1" || name == "p" ||
      name == "cp" || name == "cu1")
    return 1;
  if (name == "u2") return 2;
  if (name == "u3" || name == "u") return 3;
  return 0;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) { advance(); }

  ParsedProgram run() {
    ParsedProgram prog;
    bool have_qreg = false;
    while (cur_.kind != Token::Kind::End) {
      if (cur_.kind != Token::Kind::Ident)
        throw MalformedProgram("expected statement, got '" + cur_.text + "'", cur_.line);
      const std::string head = cur_.text;
      const int line = cur_.line;
      if (head == "OPENQASM") {
        advance();
        expect_number();
        expect_symbol(";");
      } else if (head == "include") {
        advance();
        if (cur_.kind == Token::Kind::String) advance();
        expect_symbol(";");
      } else if (head == "qreg") {
        if (have_qreg) throw MultipleQuantumRegisters();
        advance();
        qreg_name_ = expect_ident();
        expect_symbol("[");
        prog.num_qubits = static_cast<int>(expect_number());
        expect_symbol("]");
        expect_symbol(";");
        have_qreg = true;
      } else if (head == "creg") {
        advance();
        std::string name = expect_ident();
        expect_symbol("[");
        int n = static_cast<int>(expect_number());
        expect_symbol("]");
        expect_symbol(";");
        cregs_.insert(name);
        (void)n;
      } else if (head == "measure") {
        if (!have_qreg) throw MalformedProgram("measure before qreg", line);
        advance();
        auto qubits = parse_qubit_operand(prog.num_qubits);
        if (cur_.kind == Token::Kind::Symbol && cur_.text == "->") {
          advance();
          expect_ident();
          if (cur_.kind == Token::Kind::Symbol && cur_.text == "[") {
            advance();
            expect_number();
            expect_symbol("]");
          }
        }
        expect_symbol(";");
        for (int q : qubits) prog.gates.push_back({"measure", {q}, {}, line});
      } else if (head == "barrier") {
        if (!have_qreg) throw MalformedProgram("barrier before qreg", line);
        advance();
        std::vector<int> qubits;
        while (true) {
          auto part = parse_qubit_operand(prog.num_qubits);
          qubits.insert(qubits.end(), part.begin(), part.end());
          if (cur_.kind == Token::Kind::Symbol && cur_.text == ",") {
            advance();
            continue;
          }
          break;
        }
        expect_symbol(";");
        prog.gates.push_back({"barrier", qubits, {}, line});
      } else if (supported_gates().count(head)) {
        if (!have_qreg) throw MalformedProgram("gate before qreg", line);
        advance();
        std::vector<double> params;
        if (cur_.kind == Token::Kind::Symbol && cur_.text == "(") {
          advance();
          params = parse_params();
        }
        if (static_cast<int>(params.size()) != param_count(head))
          throw MalformedProgram("wrong parameter count for '" + head + "'", line);
        std::vector<std::vector<int>> operands;
        while (true) {
          operands.push_back(parse_qubit_operand(prog.num_qubits));
          if (cur_.kind == Token::Kind::Symbol && cur_.text == ",") {
            advance();
            continue;
          }
          break;
        }
        expect_symbol(";");
        if (static_cast<int>(operands.size()) != arity(head))
          throw MalformedProgram("wrong operand count for '" + head + "'", line);
        emit(prog, head, operands, params, line);
      } else {
        throw UnsupportedGate(head, line);
      }
    }
    if (!have_qreg) throw MalformedProgram("missing qreg declaration", 1);
    return prog;
  }

 private:
  void emit(ParsedProgram& prog, const std::string& name,
            const std::vector<std::vector<int>>& operands,
            const std::vector<double>& params, int line) {
    if (arity(name) == 1) {
      for (int q : operands[0]) prog.gates.push_back({name, {q}, params, line});
      return;
    }
    if (operands[0].size() != 1 || operands[1].size() != 1)
      throw MalformedProgram("two-qubit gates need indexed operands", line);
    int a = operands[0][0];
    int b = operands[1][0];
    if (a == b) throw MalformedProgram("two-qubit gate on identical qubits", line);
    prog.gates.push_back({name, {a, b}, params, line});
  }

  // `name[i]` resolves to one qubit, bare `name` broadcasts over the register.
  std::vector<int> parse_qubit_operand(int num_qubits) {
    std::string name = expect_ident();
    if (name != qreg_name_) {
      if (cregs_.count(name))
        throw MalformedProgram("expected quantum register, got creg '" + name + "'",
                               cur_.line);
      throw MalformedProgram("unknown register '" + name + "'", cur_.line);
    }
    if (cur_.kind == Token::Kind::Symbol && cur_.text == "[") {
      advance();
      int idx = static_cast<int>(expect_number());
      expect_symbol("]");
      if (idx < 0 || idx >= num_qubits)
        throw MalformedProgram("qubit index out of range", cur_.line);
      return {idx};
    }
    std::vector<int> all(static_cast<std::size_t>(num_qubits));
    for (int i = 0; i < num_qubits; ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
  }

  std::vector<double> parse_params() {
    std::vector<double> out;
    out.push_back(parse_expr());
    while (cur_.kind == Token::Kind::Symbol && cur_.text == ",") {
      advance();
      out.push_back(parse_expr());
    }
    expect_symbol(")");
    return out;
  }

  // expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
  // factor := number | pi | '-' factor | '(' expr ')'
  double parse_expr() {
    double v = parse_term();
    while (cur_.kind == Token::Kind::Symbol && (cur_.text == "+" || cur_.text == "-")) {
      bool plus = cur_.text == "+";
      advance();
      double rhs = parse_term();
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  double parse_term() {
    double v = parse_factor();
    while (cur_.kind == Token::Kind::Symbol && (cur_.text == "*" || cur_.text == "/")) {
      bool mul = cur_.text == "*";
      advance();
      double rhs = parse_factor();
      v = mul ? v * rhs : v / rhs;
    }
    return v;
  }

  double parse_factor() {
    if (cur_.kind == Token::Kind::Symbol && cur_.text == "-") {
      advance();
      return -parse_factor();
    }
    if (cur_.kind == Token::Kind::Symbol && cur_.text == "(") {
      advance();
      double v = parse_expr();
      expect_symbol(")");
      return v;
    }
    if (cur_.kind == Token::Kind::Number) {
      double v = cur_.value;
      advance();
      return v;
    }
    if (cur_.kind == Token::Kind::Ident && cur_.text == "pi") {
      advance();
      return kPi;
    }
    throw MalformedProgram("bad angle expression near '" + cur_.text + "'", cur_.line);
  }

  void advance() { cur_ = lex_.next(); }

  std::string expect_ident() {
    if (cur_.kind != Token::Kind::Ident)
      throw MalformedProgram("expected identifier, got '" + cur_.text + "'", cur_.line);
    std::string s = cur_.text;
    advance();
    return s;
  }

  double expect_number() {
    if (cur_.kind != Token::Kind::Number)
      throw MalformedProgram("expected number, got '" + cur_.text + "'", cur_.line);
    double v = cur_.value;
    advance();
    return v;
  }

  void expect_symbol(const std::string& s) {
    if (cur_.kind != Token::Kind::Symbol || cur_.text != s)
      throw MalformedProgram("expected '" + s + "', got '" + cur_.text + "'", cur_.line);
    advance();
  }

  Lexer lex_;
  Token cur_;
  std::string qreg_name_;
  std::set<std::string> cregs_;
};

}  // namespace

ParsedProgram parse_qasm(const std::string& text) { return Parser(text).run(); }

}  // namespace qcp
