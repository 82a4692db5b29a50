#include "mixnorm/format.hpp"

#include <charconv>

namespace mixnorm {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_double_sig(double x, int significant) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, significant);
    return std::string(buf, res.ptr);
}

}  // namespace mixnorm
