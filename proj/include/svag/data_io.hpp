#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "svag/problems.hpp"

namespace svag {

/// One LibSVM line: "<label> <idx>:<val> ...". Indices are 1-based as in the
/// format and strictly increasing; values finite.
struct RawRecord {
  double label = 0.0;
  std::vector<std::pair<std::int32_t, double>> entries;
};

/// Parses LibSVM text. '#' starts a comment, blank lines are skipped.
/// Malformed tokens, repeated or non-increasing indices, and non-finite
/// values raise DataError carrying the line number.
std::vector<RawRecord> parse_libsvm(std::istream& in);

void write_libsvm(std::span<const RawRecord> records, std::ostream& out);

/// Binary grouping of a (possibly multi-class) label set: labels in
/// positive_labels map to +1, all others to -1. Feature indices shift from
/// the format's 1-based convention to 0-based storage; the dimension is the
/// maximum index seen.
LabeledDataset group_labels(std::span<const RawRecord> records,
                            std::span<const double> positive_labels);

/// One checkpoint of one replication. Absent objective/theta serialize as
/// empty CSV fields.
struct TraceRow {
  std::int64_t replication = 0;
  std::int64_t iteration = 0;
  double grad_norm_sq = 0.0;
  std::optional<double> objective;
  std::optional<double> theta;
};

/// CSV with header "replication,iteration,grad_norm_sq,objective,theta";
/// rows ordered replication-major, iteration-minor. Optional metadata is
/// emitted first as "# key=value" comment lines. Numeric fields use
/// shortest round-trip decimal form, so identical rows give identical bytes.
void write_trace(std::span<const TraceRow> rows, std::ostream& out,
                 std::span<const std::pair<std::string, std::string>> metadata = {});

/// Reads a trace CSV back; '#' lines and the header are skipped.
std::vector<TraceRow> read_trace(std::istream& in);

/// Shortest decimal string that parses back to exactly v.
std::string format_number(double v);

}  // namespace svag
