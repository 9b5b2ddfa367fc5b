#pragma once

// Binary checkpoints of an integrator: grid, power, step policy, norm
// accumulators and the field itself. Doubles are stored bit for bit, so a
// resumed run reproduces the uninterrupted one exactly.
//
// Layout (host byte order, guarded by a byte-order marker):
//   "RNLSCKPT" u32 version u32 0x01020304
//   f64 r_max u64 n f64 p f64 t0 u64 step
//   f64 dt u64 snapshot_stride u8 dealias_set u8 dealias f64 oversample
//   f64 boundary_tol u64 log_stride u8 linear
//   u64 pair_count { f64 q_t f64 r_x u8 gradient }
//   u64 accumulator_count { f64 h u64 count f64 paired_sum f64 f2 f64 f1 f64 f0 }
//   n x { f64 re f64 im }

#include "radnls/evolution.hpp"

#include <filesystem>
#include <iosfwd>

namespace radnls {

inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(std::ostream& os, const Integrator::Snapshot& snap);
Integrator::Snapshot read_checkpoint(std::istream& is);

void save_checkpoint(const std::filesystem::path& path, const Integrator::Snapshot& snap);
Integrator::Snapshot load_checkpoint(const std::filesystem::path& path);

} // namespace radnls
