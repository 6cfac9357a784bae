#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "eqens/curve.hpp"
#include "eqens/ensemble.hpp"
#include "eqens/llt.hpp"

namespace eqens {

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_real(double v);

// {"ell": l, "K": K, "M": M, "occupancy": [0, 1, ...]}
void to_json(nlohmann::json& j, const ParticleConfig& c);
void from_json(const nlohmann::json& j, ParticleConfig& c);

inline constexpr double kPmfMagic = 1162955344.0;  // "EQJP" as a big-endian u32
inline constexpr double kPmfVersion = 1.0;

struct PmfFileHeader {
  double magic = kPmfMagic;
  double version = kPmfVersion;
  double n = 0;
  double kmax = 0;
  double lmax = 0;
  double defects = 0;
  double reserved[2] = {0.0, 0.0};
};

/// Eight little-endian float64 header values followed by the table,
/// row-major in K.
void write_pmf_binary(std::ostream& out, const JointPMF& pmf, std::size_t defect_count);
JointPMF read_pmf_binary(std::istream& in, PmfFileHeader* header = nullptr);

/// Columns K,L,P,q0,error over the support.
void write_pmf_csv(std::ostream& out, const JointPMF& pmf, const MomentSummary& m,
                   double lambda);

/// Two columns (x, value).
void write_curve_csv(std::ostream& out, const Curve& c, std::string_view value_name = "value");

}  // namespace eqens
