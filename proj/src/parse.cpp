#include "jetcal/parse.hpp"

#include <cctype>

namespace jetcal {

namespace {

constexpr std::uint32_t kMaxExponent = 1000000;

class Parser {
public:
    Parser(const std::string& s, std::uint32_t d, ScalarField f) : s_(s), d_(d), f_(f) {}

    Poly run()
    {
        Poly r = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return r;
    }

private:
    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek()
    {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool eat(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected digits", pos_);
        return s_.substr(start, pos_ - start);
    }

    Poly expr()
    {
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        Poly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    Poly term()
    {
        Poly acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Poly factor()
    {
        Poly b = base();
        if (eat('^')) {
            skip_ws();
            if (pos_ < s_.size() && !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw ParseError("exponent must be a nonnegative integer literal", pos_);
            std::string ds = digits();
            if (ds.size() > 7) throw ParseError("exponent overflow", pos_);
            unsigned long e = std::stoul(ds);
            if (e > kMaxExponent) throw ParseError("exponent overflow", pos_);
            Poly r = Poly::constant(1, d_, f_);
            for (unsigned long i = 0; i < e; ++i) r = r * b;
            return r;
        }
        return b;
    }

    Poly base()
    {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly r = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return r;
        }
        if (c == 'x') {
            ++pos_;
            std::string ds = digits();
            unsigned long i = std::stoul(ds);
            if (i < 1 || i > d_)
                throw ParseError("unknown variable x" + ds, pos_);
            return Poly::variable(static_cast<std::uint32_t>(i), d_, f_);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            if (eat('/')) {
                std::string den = digits();
                return Poly::constant(Scalar::from_string(num + "/" + den, f_), d_);
            }
            return Poly::constant(Scalar::from_string(num, f_), d_);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    const std::string& s_;
    std::uint32_t d_;
    ScalarField f_;
    std::size_t pos_ = 0;
};

} // namespace

Poly parse_poly(const std::string& text, std::uint32_t d, ScalarField f)
{
    return Parser(text, d, f).run();
}

} // namespace jetcal
