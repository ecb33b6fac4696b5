#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace noma {

/// gap.csv: trial,wsr_uspa,wsr_oracle,n_sel_uspa,n_sel_oracle,t_uspa_ns,t_oracle_ns
struct GapRow {
  std::int64_t trial = 0;
  double wsr_uspa = 0.0;
  double wsr_oracle = 0.0;
  int n_sel_uspa = 0;
  int n_sel_oracle = 0;
  std::int64_t t_uspa_ns = 0;
  std::int64_t t_oracle_ns = 0;

  bool operator==(const GapRow&) const = default;
};

/// oups.csv: variant,t,user,rate_avg,lambda,wsr_avg
struct OupsRow {
  std::string variant;
  std::int64_t t = 0;
  int user = 0;
  double rate_avg = 0.0;
  double lambda = 0.0;
  double wsr_avg = 0.0;

  bool operator==(const OupsRow&) const = default;
};

inline constexpr const char* kGapHeader =
    "trial,wsr_uspa,wsr_oracle,n_sel_uspa,n_sel_oracle,t_uspa_ns,t_oracle_ns";
inline constexpr const char* kOupsHeader = "variant,t,user,rate_avg,lambda,wsr_avg";

// Doubles are written in shortest round-trip form, so read -> write
// reproduces the input bytes.
void write_gap_csv(std::ostream& out, const std::vector<GapRow>& rows);
std::vector<GapRow> read_gap_csv(std::istream& in);

void write_oups_csv(std::ostream& out, const std::vector<OupsRow>& rows);
std::vector<OupsRow> read_oups_csv(std::istream& in);

}  // namespace noma
