/*
   Copyright 2026 The hypaut authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef HYPAUT_DETAIL_EXPR_PARSER_HPP
#define HYPAUT_DETAIL_EXPR_PARSER_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "hypaut/parse_error.hpp"

namespace hypaut::detail {

/*
 * Recursive-descent parser shared by scalars and forms.
 *
 *   expr   := term (('+'|'-') term)*
 *   term   := unary (('*'|'/')? unary)*      juxtaposition multiplies
 *   unary  := ('-'|'+') unary | power
 *   power  := atom ('^' '-'? INT)?
 *   atom   := INT | 'z' INT | 'x' INT | '(' expr ')'
 *
 * Ops supplies the value type and the semantic actions; variables are
 * rejected unless Ops::allow_vars is true.
 */
template <class Ops>
class ExprParser {
   public:
    using Value = typename Ops::Value;

    ExprParser(std::string_view text, Ops& ops) : s_(text), ops_(ops) {}

    Value parse_all() {
        skip_ws();
        if (pos_ >= s_.size()) fail("empty expression");
        Value v = expr();
        skip_ws();
        if (pos_ < s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
        return v;
    }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    std::size_t position() const { return pos_; }

   private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_atom() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'z' || c == 'x' || c == '(';
    }

    std::string read_int() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::string(s_.substr(start, pos_ - start));
    }

    long long read_small_int() {
        std::size_t start = pos_;
        std::string digits = read_int();
        if (digits.size() > 9) fail_at("integer too large here", start);
        return std::stoll(digits);
    }

    Value expr() {
        Value v = term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                v = ops_.add(v, term());
            } else if (peek('-')) {
                ++pos_;
                v = ops_.sub(v, term());
            } else {
                return v;
            }
        }
    }

    Value term() {
        Value v = unary();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                v = ops_.mul(v, unary());
            } else if (peek('/')) {
                std::size_t at = pos_++;
                Value d = unary();
                v = ops_.div(v, d, [&](const std::string& m) { fail_at(m, at); });
            } else if (starts_atom()) {
                v = ops_.mul(v, power());
            } else {
                return v;
            }
        }
    }

    Value unary() {
        if (peek('-')) {
            ++pos_;
            return ops_.neg(unary());
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    Value power() {
        std::size_t at = pos_;
        Value b = atom();
        if (peek('^')) {
            ++pos_;
            bool neg = false;
            if (peek('-')) {
                ++pos_;
                neg = true;
            }
            long long e = read_small_int();
            return ops_.pow(b, neg ? -e : e, [&](const std::string& m) { fail_at(m, at); });
        }
        return b;
    }

    Value atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return ops_.integer(read_int());
        if (c == 'z') {
            std::size_t at = pos_++;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected root-of-unity order after 'z'");
            long long k = read_small_int();
            if (k < 1) fail_at("root-of-unity order must be positive", at);
            return ops_.zeta(static_cast<int>(k));
        }
        if (c == 'x') {
            std::size_t at = pos_++;
            if (!Ops::allow_vars) fail_at("variables are not allowed in a scalar", at);
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected variable index after 'x'");
            long long i = read_small_int();
            if (i < 1) fail_at("variable indices start at 1", at);
            return ops_.var(static_cast<int>(i), [&](const std::string& m) { fail_at(m, at); });
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    Ops& ops_;
    std::size_t pos_ = 0;
};

}  // namespace hypaut::detail

#endif
