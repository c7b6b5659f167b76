#include "diagcert/rings.hpp"

#include <cctype>

namespace diagcert {

namespace {

// Recursive-descent parser for
//   expr    := term (('+'|'-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('-'|'+') unary | power
//   power   := primary ('^' integer)?
//   primary := integer ('/' integer)? | variable | '(' expr ')'
class Parser {
public:
    Parser(const Ring& ring, std::string_view text) : ring_(ring), s_(text) {}

    Poly run()
    {
        skip();
        if (pos_ >= s_.size())
            throw ParseError("empty polynomial", pos_);
        Poly p = expr();
        skip();
        if (pos_ != s_.size())
            throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
        return p;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr()
    {
        Poly acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Poly term()
    {
        Poly acc = unary();
        for (;;) {
            skip();
            if (accept('*')) {
                acc *= unary();
            } else if (pos_ < s_.size() && s_[pos_] == '/') {
                throw ParseError("division is only allowed between integer literals", pos_);
            } else {
                return acc;
            }
        }
    }

    Poly unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    Poly power()
    {
        Poly base = primary();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            mpz_class e = integer();
            if (e > 10000)
                throw ParseError("exponent too large", start);
            base = base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    mpz_class integer()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            throw ParseError("expected integer", start);
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    Poly primary()
    {
        skip();
        if (pos_ >= s_.size())
            throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            mpz_class num = integer();
            Coeff value(num);
            skip();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip();
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    throw ParseError("division is only allowed between integer literals", pos_);
                mpz_class den = integer();
                if (den == 0)
                    throw ParseError("zero denominator", start);
                value = Coeff(num, den);
                value.canonicalize();
                if (!ring_.field_coefficients() && value.get_den() != 1)
                    throw ParseError("non-integer coefficient over " + ring_.describe(), start);
            }
            return Poly::constant(ring_, value);
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t start = pos_;
            while (pos_ < s_.size()
                   && (std::islower(static_cast<unsigned char>(s_[pos_]))
                       || std::isdigit(static_cast<unsigned char>(s_[pos_]))))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            const auto& vars = ring_.variables();
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name)
                    return Poly::variable(ring_, i);
            throw ParseError("unknown variable '" + name + "' for ring " + ring_.describe(), start);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    const Ring& ring_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Poly Poly::parse(const Ring& ring, std::string_view text)
{
    return Parser(ring, text).run();
}

} // namespace diagcert
