// Small token helpers shared by element grammars and the model reader.

#ifndef WCA_TOKENS_HPP
#define WCA_TOKENS_HPP

#include <string>
#include <string_view>
#include <vector>

namespace wca {

bool is_digits(std::string_view s);

// Signed decimal integer: [-]?digits, nothing else.
bool is_signed_digits(std::string_view s);

// Splits on a delimiter at nesting depth zero; '(' ')' '{' '}' nest.
// Keeps empty fields so callers can reject them with a clear message.
std::vector<std::string_view> split_top_level(std::string_view s, char delim);

std::string_view trim(std::string_view s);

}  // namespace wca

#endif
