#include "noma/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <system_error>

#include "noma/config.hpp"

namespace noma {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T field(std::string_view text, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad field '" + std::string(text) + "'");
  return value;
}

void expect_header(std::istream& in, const char* header) {
  std::string line;
  if (!std::getline(in, line) || line != header) throw std::runtime_error("csv: unexpected header");
}

}  // namespace

void write_gap_csv(std::ostream& out, const std::vector<GapRow>& rows) {
  out << kGapHeader << '\n';
  for (const auto& r : rows) {
    out << r.trial << ',' << format_double(r.wsr_uspa) << ',' << format_double(r.wsr_oracle) << ','
        << r.n_sel_uspa << ',' << r.n_sel_oracle << ',' << r.t_uspa_ns << ',' << r.t_oracle_ns << '\n';
  }
}

std::vector<GapRow> read_gap_csv(std::istream& in) {
  expect_header(in, kGapHeader);
  std::vector<GapRow> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 7) throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 7 fields");
    rows.push_back({field<std::int64_t>(f[0], line_no), field<double>(f[1], line_no),
                    field<double>(f[2], line_no), field<int>(f[3], line_no), field<int>(f[4], line_no),
                    field<std::int64_t>(f[5], line_no), field<std::int64_t>(f[6], line_no)});
  }
  return rows;
}

void write_oups_csv(std::ostream& out, const std::vector<OupsRow>& rows) {
  out << kOupsHeader << '\n';
  for (const auto& r : rows) {
    out << r.variant << ',' << r.t << ',' << r.user << ',' << format_double(r.rate_avg) << ','
        << format_double(r.lambda) << ',' << format_double(r.wsr_avg) << '\n';
  }
}

std::vector<OupsRow> read_oups_csv(std::istream& in) {
  expect_header(in, kOupsHeader);
  std::vector<OupsRow> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 6) throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 6 fields");
    rows.push_back({std::string(f[0]), field<std::int64_t>(f[1], line_no), field<int>(f[2], line_no),
                    field<double>(f[3], line_no), field<double>(f[4], line_no), field<double>(f[5], line_no)});
  }
  return rows;
}

}  // namespace noma
