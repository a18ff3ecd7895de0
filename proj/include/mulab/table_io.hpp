#pragma once

#include <string>

#include "mulab/arith.hpp"

namespace mulab {

// MLTB table file, bit-exact:
//   magic "MLTB" | version 0x01 | function byte (0=mu, 1=lambda, 2=mu^2)
//   | start u64 LE | length u64 LE | `length` signed value bytes.
void write_table(const ArithmeticTable& table, const std::string& path);
ArithmeticTable read_table(const std::string& path);

}  // namespace mulab
