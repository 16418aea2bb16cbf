#include "svag/data_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "svag/errors.hpp"

namespace svag {

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

// Whole-token numeric parse; rejects trailing junk and (for doubles) non-finite text.
double parse_double_token(std::string_view tok, std::size_t line) {
  double value = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw DataError("malformed numeric token '" + std::string(tok) + "'", line);
  if (!std::isfinite(value))
    throw DataError("non-finite value '" + std::string(tok) + "'", line);
  return value;
}

std::int32_t parse_index_token(std::string_view tok, std::size_t line) {
  std::int32_t value = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || value < 1)
    throw DataError("malformed feature index '" + std::string(tok) + "'", line);
  return value;
}

}  // namespace

std::vector<RawRecord> parse_libsvm(std::istream& in) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);

    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;  // blank line

    RawRecord record;
    if (!tok.empty() && tok.front() == '+') tok.erase(0, 1);
    record.label = parse_double_token(tok, line_no);

    std::int32_t last_index = 0;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        throw DataError("expected '<index>:<value>', got '" + tok + "'", line_no);
      const std::int32_t index =
          parse_index_token(std::string_view(tok).substr(0, colon), line_no);
      const double value = parse_double_token(std::string_view(tok).substr(colon + 1), line_no);
      if (index <= last_index)
        throw DataError("feature indices must be strictly increasing", line_no);
      last_index = index;
      record.entries.emplace_back(index, value);
    }
    records.push_back(std::move(record));
  }
  return records;
}

void write_libsvm(std::span<const RawRecord> records, std::ostream& out) {
  for (const auto& record : records) {
    out << format_number(record.label);
    for (const auto& [index, value] : record.entries)
      out << ' ' << index << ':' << format_number(value);
    out << '\n';
  }
}

LabeledDataset group_labels(std::span<const RawRecord> records,
                            std::span<const double> positive_labels) {
  LabeledDataset data;
  Eigen::Index dim = 0;
  for (const auto& record : records)
    if (!record.entries.empty()) dim = std::max<Eigen::Index>(dim, record.entries.back().first);

  data.dim = dim;
  data.rows.reserve(records.size());
  data.labels.reserve(records.size());
  for (const auto& record : records) {
    SparseRow row;
    row.indices.reserve(record.entries.size());
    row.values.reserve(record.entries.size());
    for (const auto& [index, value] : record.entries) {
      row.indices.push_back(index - 1);  // 1-based format -> 0-based storage
      row.values.push_back(value);
    }
    const bool positive =
        std::find(positive_labels.begin(), positive_labels.end(), record.label) !=
        positive_labels.end();
    data.rows.push_back(std::move(row));
    data.labels.push_back(positive ? 1.0 : -1.0);
  }
  return data;
}

void write_trace(std::span<const TraceRow> rows, std::ostream& out,
                 std::span<const std::pair<std::string, std::string>> metadata) {
  for (const auto& [key, value] : metadata) out << "# " << key << '=' << value << '\n';
  out << "replication,iteration,grad_norm_sq,objective,theta\n";

  std::vector<const TraceRow*> ordered;
  ordered.reserve(rows.size());
  for (const auto& row : rows) ordered.push_back(&row);
  std::stable_sort(ordered.begin(), ordered.end(), [](const TraceRow* a, const TraceRow* b) {
    if (a->replication != b->replication) return a->replication < b->replication;
    return a->iteration < b->iteration;
  });

  for (const TraceRow* row : ordered) {
    out << row->replication << ',' << row->iteration << ',' << format_number(row->grad_norm_sq)
        << ',';
    if (row->objective) out << format_number(*row->objective);
    out << ',';
    if (row->theta) out << format_number(*row->theta);
    out << '\n';
  }
  if (!out) throw DataError("trace write failed");
}

std::vector<TraceRow> read_trace(std::istream& in) {
  std::vector<TraceRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    std::array<std::string, 5> fields;
    std::size_t field = 0, start = 0;
    for (std::size_t pos = 0; pos <= line.size(); ++pos) {
      if (pos == line.size() || line[pos] == ',') {
        if (field >= fields.size()) throw DataError("too many fields", line_no);
        fields[field++] = line.substr(start, pos - start);
        start = pos + 1;
      }
    }
    if (field != fields.size()) throw DataError("expected 5 fields", line_no);

    TraceRow row;
    row.replication = static_cast<std::int64_t>(parse_double_token(fields[0], line_no));
    row.iteration = static_cast<std::int64_t>(parse_double_token(fields[1], line_no));
    {
      // grad_norm_sq may legitimately be inf on a diverged run.
      double value = 0.0;
      const auto res =
          std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), value);
      if (res.ec != std::errc{} || res.ptr != fields[2].data() + fields[2].size())
        throw DataError("malformed numeric token '" + fields[2] + "'", line_no);
      row.grad_norm_sq = value;
    }
    if (!fields[3].empty()) row.objective = parse_double_token(fields[3], line_no);
    if (!fields[4].empty()) row.theta = parse_double_token(fields[4], line_no);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace svag
