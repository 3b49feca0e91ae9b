#include "regcert/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "regcert/errors.hpp"

namespace regcert {

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    double parse()
    {
        skip_ws();
        if (pos_ == text_.size())
            throw ParseError("empty expression", pos_);
        double v = factor();
        for (;;) {
            skip_ws();
            if (pos_ == text_.size())
                return v;
            const char op = text_[pos_];
            if (op != '*' && op != '/')
                throw ParseError(std::string("unexpected character '") + op + "'", pos_);
            ++pos_;
            const double rhs = factor();
            v = op == '*' ? v * rhs : v / rhs;
        }
    }

private:
    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    double factor()
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == 'e' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '^') {
            pos_ += 2;
            skip_ws();
            bool paren = false;
            if (pos_ < text_.size() && text_[pos_] == '(') {
                paren = true;
                ++pos_;
            }
            const double x = number();
            if (paren) {
                skip_ws();
                if (pos_ >= text_.size() || text_[pos_] != ')')
                    throw ParseError("expected ')'", pos_);
                ++pos_;
            }
            return std::exp(x);
        }
        return number();
    }

    double number()
    {
        skip_ws();
        const std::string rest(text_.substr(pos_));
        char* end = nullptr;
        const double v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str())
            throw ParseError("expected a number or e^X", pos_);
        pos_ += static_cast<std::size_t>(end - rest.c_str());
        return v;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

double parse_real_expr(std::string_view text)
{
    const double v = ExprParser(text).parse();
    if (!std::isfinite(v))
        throw ParseError("expression does not evaluate to a finite number", 0);
    return v;
}

} // namespace regcert
