#include "eqens/io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include <cstdio>

#include "eqens/error.hpp"

namespace eqens {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InfeasibleConstraint: return "InfeasibleConstraint";
    case ErrorKind::DegenerateCorrelation: return "DegenerateCorrelation";
    case ErrorKind::IntervalMismatch: return "IntervalMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
  }
  return "Unknown";
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void to_json(nlohmann::json& j, const ParticleConfig& c) {
  j = nlohmann::json{{"ell", c.ell},
                     {"K", c.particle_count()},
                     {"M", c.moment()},
                     {"occupancy", c.occupancy}};
}

void from_json(const nlohmann::json& j, ParticleConfig& c) {
  ParticleConfig parsed(j.at("ell").get<int>(), j.at("occupancy").get<std::vector<std::uint8_t>>());
  if ((j.contains("K") && j.at("K").get<int>() != parsed.particle_count()) ||
      (j.contains("M") && j.at("M").get<long long>() != parsed.moment())) {
    throw Error(ErrorKind::OutOfDomain, "ParticleConfig JSON: K/M disagree with occupancy");
  }
  c = std::move(parsed);
}

namespace {

void put_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
  out.write(bytes.data(), 8);
}

double get_le(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), 8);
  if (!in) throw Error(ErrorKind::OutOfDomain, "PMF file: truncated");
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | bytes[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_pmf_binary(std::ostream& out, const JointPMF& pmf, std::size_t defect_count) {
  put_le(out, kPmfMagic);
  put_le(out, kPmfVersion);
  put_le(out, pmf.n());
  put_le(out, pmf.kmax());
  put_le(out, static_cast<double>(pmf.lmax()));
  put_le(out, static_cast<double>(defect_count));
  put_le(out, 0.0);
  put_le(out, 0.0);
  for (double v : pmf.values()) put_le(out, v);
}

JointPMF read_pmf_binary(std::istream& in, PmfFileHeader* header) {
  PmfFileHeader h;
  h.magic = get_le(in);
  h.version = get_le(in);
  if (h.magic != kPmfMagic || h.version != kPmfVersion) {
    throw Error(ErrorKind::OutOfDomain, "PMF file: bad magic or version");
  }
  h.n = get_le(in);
  h.kmax = get_le(in);
  h.lmax = get_le(in);
  h.defects = get_le(in);
  h.reserved[0] = get_le(in);
  h.reserved[1] = get_le(in);
  const auto kmax = static_cast<int>(h.kmax);
  const auto lmax = static_cast<long long>(h.lmax);
  std::vector<double> values(static_cast<std::size_t>(kmax + 1) * static_cast<std::size_t>(lmax + 1));
  for (auto& v : values) v = get_le(in);
  if (header) *header = h;
  return JointPMF(static_cast<int>(h.n), kmax, lmax, std::move(values));
}

void write_pmf_csv(std::ostream& out, const JointPMF& pmf, const MomentSummary& m,
                   double lambda) {
  out << "K,L,P,q0,error\n";
  const double su = std::sqrt(m.U);
  const double sv = std::sqrt(m.V);
  for (int K = 0; K <= pmf.kmax(); ++K) {
    for (long long L = 0; L <= pmf.lmax(); ++L) {
      const double p = pmf.at(K, L);
      if (!(p > 0.0)) continue;
      const double q = gaussian_q0((K - m.E) / su, (static_cast<double>(L) - m.F) / sv, lambda);
      out << K << ',' << L << ',' << format_real(p) << ',' << format_real(q) << ','
          << format_real(std::abs(su * sv * p - q)) << '\n';
    }
  }
}

void write_curve_csv(std::ostream& out, const Curve& c, std::string_view value_name) {
  out << "x," << value_name << '\n';
  for (std::size_t i = 0; i < c.size(); ++i) {
    out << format_real(c.x()[i]) << ',' << format_real(c.y()[i]) << '\n';
  }
}

}  // namespace eqens
