#include "radnls/checkpoint.hpp"

#include "radnls/error.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace radnls {

namespace {

constexpr std::array<char, 8> kMagic{'R', 'N', 'L', 'S', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kByteOrder = 0x01020304u;

template <typename T>
void put(std::ostream& os, T value) {
    os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& is, const char* what) {
    T value{};
    if (!is.read(reinterpret_cast<char*>(&value), sizeof(T)))
        throw ParseError(std::string("checkpoint truncated while reading ") + what, 0);
    return value;
}

} // namespace

void write_checkpoint(std::ostream& os, const Integrator::Snapshot& s) {
    os.write(kMagic.data(), kMagic.size());
    put<std::uint32_t>(os, kCheckpointVersion);
    put<std::uint32_t>(os, kByteOrder);
    put<double>(os, s.u.grid.r_max());
    put<std::uint64_t>(os, s.u.size());
    put<double>(os, s.p);
    put<double>(os, s.t0);
    put<std::uint64_t>(os, s.step);
    put<double>(os, s.policy.dt);
    put<std::uint64_t>(os, s.policy.snapshot_stride);
    put<std::uint8_t>(os, s.policy.dealias.has_value() ? 1 : 0);
    put<std::uint8_t>(os, s.policy.dealias.value_or(false) ? 1 : 0);
    put<double>(os, s.policy.oversample);
    put<double>(os, s.policy.boundary_tol);
    put<std::uint64_t>(os, s.policy.log_stride);
    put<std::uint8_t>(os, s.policy.linear ? 1 : 0);
    put<std::uint64_t>(os, s.pairs.size());
    for (const auto& pr : s.pairs) {
        put<double>(os, pr.q_t);
        put<double>(os, pr.r_x);
        put<std::uint8_t>(os, pr.gradient ? 1 : 0);
    }
    put<std::uint64_t>(os, s.accumulators.size());
    for (const auto& a : s.accumulators) {
        put<double>(os, a.h);
        put<std::uint64_t>(os, a.count);
        put<double>(os, a.paired_sum);
        put<double>(os, a.f2);
        put<double>(os, a.f1);
        put<double>(os, a.f0);
    }
    os.write(reinterpret_cast<const char*>(s.u.values.data()),
             static_cast<std::streamsize>(s.u.values.size() * sizeof(cplx)));
    if (!os)
        throw Error("failed to write checkpoint");
}

Integrator::Snapshot read_checkpoint(std::istream& is) {
    std::array<char, 8> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic)
        throw ParseError("not a checkpoint file (bad magic)", 0);
    if (const auto v = get<std::uint32_t>(is, "version"); v != kCheckpointVersion)
        throw ParseError("unsupported checkpoint version " + std::to_string(v), 0);
    if (get<std::uint32_t>(is, "byte order") != kByteOrder)
        throw ParseError("checkpoint was written with a different byte order", 0);
    const double r_max = get<double>(is, "r_max");
    const auto n = get<std::uint64_t>(is, "n");
    const double p = get<double>(is, "p");
    const double t0 = get<double>(is, "t0");
    const auto step = get<std::uint64_t>(is, "step");
    StepPolicy pol;
    pol.dt = get<double>(is, "dt");
    pol.snapshot_stride = get<std::uint64_t>(is, "snapshot stride");
    const bool has_dealias = get<std::uint8_t>(is, "dealias flag") != 0;
    const bool dealias = get<std::uint8_t>(is, "dealias") != 0;
    if (has_dealias)
        pol.dealias = dealias;
    pol.oversample = get<double>(is, "oversample");
    pol.boundary_tol = get<double>(is, "boundary tolerance");
    pol.log_stride = get<std::uint64_t>(is, "log stride");
    pol.linear = get<std::uint8_t>(is, "linear flag") != 0;
    std::vector<NormPair> pairs(get<std::uint64_t>(is, "pair count"));
    for (auto& pr : pairs) {
        pr.q_t = get<double>(is, "pair");
        pr.r_x = get<double>(is, "pair");
        pr.gradient = get<std::uint8_t>(is, "pair") != 0;
    }
    std::vector<SimpsonAccumulator::State> acc(get<std::uint64_t>(is, "accumulator count"));
    for (auto& a : acc) {
        a.h = get<double>(is, "accumulator");
        a.count = get<std::uint64_t>(is, "accumulator");
        a.paired_sum = get<double>(is, "accumulator");
        a.f2 = get<double>(is, "accumulator");
        a.f1 = get<double>(is, "accumulator");
        a.f0 = get<double>(is, "accumulator");
    }
    RadialGrid grid(r_max, static_cast<std::size_t>(n));
    std::vector<cplx> values(static_cast<std::size_t>(n));
    if (!is.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(n * sizeof(cplx))))
        throw ParseError("checkpoint truncated in field samples", 0);
    return {RadialField(grid, std::move(values)), p, t0, static_cast<std::size_t>(step), pol, pairs, acc};
}

void save_checkpoint(const std::filesystem::path& path, const Integrator::Snapshot& snap) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw Error("cannot open checkpoint for writing: " + path.string());
    write_checkpoint(os, snap);
}

Integrator::Snapshot load_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw Error("cannot open checkpoint: " + path.string());
    return read_checkpoint(is);
}

} // namespace radnls
