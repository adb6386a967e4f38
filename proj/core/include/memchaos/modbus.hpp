#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace memchaos {

// Raw frame bytes for serial-protocol payloads (address, function code,
// data, CRC all opaque here); cipher treats it as any other byte buffer.
struct ModbusFrame {
    std::vector<std::uint8_t> bytes;  // length >= 1
};

// Parses whitespace-separated hex octets, each either 0x-prefixed or
// bare ("0x13" or "13"), case-insensitive. Throws ParseError with the
// 0-based token index for a non-hex or wrong-width token, and for empty
// input (index 0).
ModbusFrame parse_modbus_hex(const std::string& text);

// "0x13 0x04 ..." — uppercase hex, two digits per byte, single spaces.
std::string format_modbus_hex(const ModbusFrame& frame);

}  // namespace memchaos
