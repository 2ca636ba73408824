#ifndef POLWIG_CRC_HPP
#define POLWIG_CRC_HPP

#include <vector>

#include "polwig/devices.hpp"
#include "polwig/wigner.hpp"

namespace polwig {

struct CrcRow {
  double theta = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double concurrence_value = 0.0;
  double nwf_delta = 0.0;
  double nwf_error = 0.0;
};

// Converter scan: the fixed input compensator phi2 acts first, then the
// rotator, then the swept compensator phi1 on the output side. Rows are
// grouped by phi1 (outer) with theta ascending inside each group.
inline std::vector<CrcRow> crc_sweep(const CoherentSuperposition& psi,
                                     const std::vector<double>& thetas,
                                     const std::vector<double>& phi1_list,
                                     double phi2,
                                     const NwfPolicy& policy = {}) {
  require_normalized(psi, "crc_sweep");
  std::vector<CrcRow> rows;
  rows.reserve(thetas.size() * phi1_list.size());
  for (double phi1 : phi1_list)
    for (double theta : thetas) {
      const DeviceSpec dev = crc_device(phi2, theta, phi1);
      const CoherentSuperposition out = apply_device(psi, dev);
      const NwfResult r = nwf(out, policy);
      rows.push_back({theta, phi1, phi2, concurrence(out), r.delta,
                      r.error_estimate});
    }
  return rows;
}

} // namespace polwig

#endif
