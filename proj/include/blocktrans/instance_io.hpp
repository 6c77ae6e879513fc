#pragma once

#include <string>
#include <string_view>

#include <blocktrans/block_theorem.hpp>

namespace blocktrans {

constexpr int kInstanceFormatVersion = 1;
constexpr int kCertificateFormatVersion = 1;

/// Parses the line-oriented instance format:
///
///   # comments run to end of line
///   field gf 5            (or: field rational)
///   rows 3
///   cols 3
///   rowblock 0 : 0 1      (block numbers consecutive from 0)
///   rowblock 1 : 2
///   colblock 0 : 0 1
///   colblock 1 : 2
///   require rows : 1 1
///   require cols : 1 1
///   matrix
///   1 2 0
///   2 4 1
///   0 1 3
///
/// Header directives may come in any order but must precede `matrix`.
/// Rational entries may be written "a" or "a/b". Throws ParseError with
/// line/column for malformed text, PartitionError for missing or
/// duplicated indices, QuotaMismatchError when the quota sums differ.
BlockInstance parse_instance(std::string_view text);

/// Renders an instance in the same format; parse_instance round-trips it.
std::string format_instance(const BlockInstance& inst);

}  // namespace blocktrans
