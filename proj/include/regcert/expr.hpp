#ifndef REGCERT_EXPR_HPP
#define REGCERT_EXPR_HPP

#include <string>
#include <string_view>

namespace regcert {

// Parses products/quotients of decimal literals and natural exponentials:
// "3030000", "e^31.492", "4/e^31.492", "2*e^-3", "e^(20)". Evaluated in binary64.
double parse_real_expr(std::string_view text);

} // namespace regcert

#endif
