#include "memchaos/modbus.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "memchaos/error.hpp"

namespace memchaos {

namespace {

int hex_digit(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

ModbusFrame parse_modbus_hex(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    ModbusFrame frame;
    std::size_t index = 0;
    while (in >> tok) {
        std::string digits = tok;
        if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
            digits = digits.substr(2);
        }
        if (digits.size() != 2) {
            throw ParseError(index, "hex token " + std::to_string(index) +
                                        " must be exactly one octet: '" + tok + "'");
        }
        const int hi = hex_digit(digits[0]);
        const int lo = hex_digit(digits[1]);
        if (hi < 0 || lo < 0) {
            throw ParseError(index, "hex token " + std::to_string(index) +
                                        " has non-hex characters: '" + tok + "'");
        }
        frame.bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
        ++index;
    }
    if (frame.bytes.empty()) {
        throw ParseError(0, "hex frame input is empty");
    }
    return frame;
}

std::string format_modbus_hex(const ModbusFrame& frame) {
    std::string out;
    char buf[8];
    for (std::size_t i = 0; i < frame.bytes.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "0x%02X", frame.bytes[i]);
        if (i != 0) out += ' ';
        out += buf;
    }
    return out;
}

}  // namespace memchaos
