/*
 * Copyright 2026 The tidsim Authors
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
 */
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "tidsim/ddseq.hpp"
#include "tidsim/errors.hpp"
#include "tidsim/format.hpp"

namespace tidsim {

namespace {

constexpr double kPi = std::numbers::pi;

class Parser {
 public:
  Parser(const std::string& text, const DslBindings& b) : src_(text), bind_(b) {}

  PulseSchedule run() {
    PulseSchedule s;
    s.name = bind_.name;
    s.tau = bind_.tau.value_or(0.0);
    skip();
    expect('[');
    skip();
    while (!at_end() && peek() != ']') {
      s.events.push_back(item());
      skip();
    }
    if (s.events.empty()) fail("schedule needs at least one item");
    expect(']');
    skip();
    if (!at_end() && peek() == '^') {
      advance();
      skip();
      s.repetitions = repetition_count();
      skip();
    }
    if (!at_end()) fail(std::string("unexpected '") + peek() + "' after schedule");
    return s;
  }

 private:
  const std::string& src_;
  const DslBindings& bind_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line_, col_); }
  [[noreturn]] void fail_at(const std::string& msg, int line, int col) const {
    throw SyntaxError(msg, line, col);
  }

  void skip() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (at_end()) fail(std::string("expected '") + c + "' but reached end of input");
    if (peek() != c) fail(std::string("expected '") + c + "' but found '" + peek() + "'");
    advance();
  }

  std::string word() {
    std::string w;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) {
      w += peek();
      advance();
    }
    return w;
  }

  bool number_starts() const {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return true;
    if (c == '-' || c == '+') {
      const char d = peek(1);
      return std::isdigit(static_cast<unsigned char>(d)) || d == '.';
    }
    return false;
  }

  double number() {
    const std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') advance();
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) advance();
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      const char d = peek(1);
      const bool signed_exp = (d == '+' || d == '-') && std::isdigit(static_cast<unsigned char>(peek(2)));
      if (std::isdigit(static_cast<unsigned char>(d)) || signed_exp) {
        advance();
        if (signed_exp) advance();
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
    }
    const char* first = src_.data() + start + (src_[start] == '+' ? 1 : 0);
    const char* last = src_.data() + pos_;
    double v = 0.0;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) fail("malformed number");
    return v;
  }

  int integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000'000) fail("integer too large");
      advance();
    }
    return static_cast<int>(v);
  }

  double bound_tau(int line, int col) const {
    if (!bind_.tau) throw Error(ErrorCode::SemanticError, std::to_string(line) + ":" + std::to_string(col) +
                                                              ": 'tau' used but not bound");
    if (!(*bind_.tau > 0.0)) {
      throw Error(ErrorCode::SemanticError, "tau must be positive (got " + fmt_double(*bind_.tau) + ")");
    }
    return *bind_.tau;
  }

  int repetition_count() {
    const int line = line_, col = col_;
    int n = 0;
    if (peek() == 'N') {
      advance();
      if (!bind_.repetitions) {
        throw Error(ErrorCode::SemanticError,
                    std::to_string(line) + ":" + std::to_string(col) + ": 'N' used but not bound");
      }
      n = *bind_.repetitions;
    } else {
      n = integer();
    }
    if (n < 1) {
      throw Error(ErrorCode::SemanticError,
                  std::to_string(line) + ":" + std::to_string(col) + ": repetition count must be >= 1");
    }
    return n;
  }

  PulseEvent item() {
    const int line = line_, col = col_;
    if (peek() == 'P' && peek(1) == '(') {
      advance();
      advance();
      skip();
      const double phase = phase_token();
      skip();
      expect(')');
      return PulseEvent::pulse(phase);
    }
    if (number_starts()) {
      const double v = number();
      skip();
      const int ul = line_, uc = col_;
      const std::string unit = word();
      double scale = 0.0;
      if (unit == "s") scale = 1.0;
      else if (unit == "ms") scale = 1e-3;
      else if (unit == "us") scale = 1e-6;
      else fail_at(unit.empty() ? "expected a time unit (s, ms, us)" : "unknown time unit '" + unit + "'", ul, uc);
      if (v < 0.0) {
        throw Error(ErrorCode::SemanticError,
                    std::to_string(line) + ":" + std::to_string(col) + ": negative delay");
      }
      return PulseEvent::delay(v * scale);
    }
    const std::string w = word();
    if (w == "tau") {
      const double tau = bound_tau(line, col);
      skip();
      if (!at_end() && peek() == '/') {
        advance();
        skip();
        const int divisor = integer();
        if (divisor == 0) {
          throw Error(ErrorCode::SemanticError,
                      std::to_string(line) + ":" + std::to_string(col) + ": division of tau by zero");
        }
        return PulseEvent::delay(tau / divisor);
      }
      return PulseEvent::delay(tau);
    }
    if (w.empty()) fail(std::string("unexpected '") + peek() + "'");
    fail_at("unknown item '" + w + "'", line, col);
  }

  double phase_token() {
    const int line = line_, col = col_;
    if (number_starts()) {
      const double v = number();
      skip();
      const std::string unit = word();
      if (unit == "deg") return v * kPi / 180.0;
      if (unit == "rad") return v;
      fail_at("phase number needs 'deg' or 'rad'", line, col);
    }
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      advance();
    }
    std::string w = word();
    if (w.empty() && !at_end() && peek() != ')') {
      w = peek();
    }
    if (w == "x") return negative ? kPi : 0.0;
    if (w == "y") return negative ? 1.5 * kPi : 0.5 * kPi;
    fail_at("unknown phase token '" + std::string(negative ? "-" : "") + w + "'", line, col);
  }
};

}  // namespace

PulseSchedule parse_dsl(const std::string& text, const DslBindings& bindings) {
  return Parser(text, bindings).run();
}

std::string print_dsl(const PulseSchedule& s) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& e : s.events) {
    if (!first) os << ' ';
    first = false;
    if (e.kind == EventKind::Pulse) {
      os << "P(";
      const double p = e.phase;
      if (p == 0.0) os << 'x';
      else if (p == 0.5 * kPi) os << 'y';
      else if (p == kPi) os << "-x";
      else if (p == 1.5 * kPi) os << "-y";
      else os << fmt_double(p) << "rad";
      os << ')';
      continue;
    }
    bool symbolic = false;
    if (s.tau > 0.0) {
      for (int k = 1; k <= 64 && !symbolic; ++k) {
        if (e.duration == s.tau / k) {
          os << (k == 1 ? std::string("tau") : "tau/" + std::to_string(k));
          symbolic = true;
        }
      }
    }
    if (!symbolic) os << fmt_double(e.duration) << 's';
  }
  os << ']';
  if (s.repetitions != 1) os << '^' << s.repetitions;
  return os.str();
}

}  // namespace tidsim
