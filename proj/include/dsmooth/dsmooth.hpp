#ifndef DSMOOTH_DSMOOTH_HPP
#define DSMOOTH_DSMOOTH_HPP

#include "dsmooth/builtins.hpp"
#include "dsmooth/certify.hpp"
#include "dsmooth/hilbert.hpp"
#include "dsmooth/isocheck.hpp"
#include "dsmooth/presfmt.hpp"
#include "dsmooth/sklyanin3_params.hpp"
#include "dsmooth/sklyanin_checks.hpp"

namespace dsmooth {

inline constexpr const char* kVersion = "1.0.0";
/// Version of the JSON report layout.
inline constexpr int kReportSchema = 1;

}  // namespace dsmooth

#endif  // DSMOOTH_DSMOOTH_HPP
