#include "hallmhd/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace hallmhd {

namespace {

static_assert(sizeof(double) == 8);

template <class T>
void put_le(std::ostream& os, T value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
    unsigned char bytes[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw std::runtime_error("checkpoint truncated");
    if constexpr (std::endian::native == std::endian::big)
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const std::vector<SpectralScalarField>& components) {
    if (components.empty()) throw ValidationError("checkpoint needs at least one component");
    const GridSpec& g = components.front().grid();
    for (const auto& c : components) require_same_grid(g, c.grid(), "write_checkpoint");

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os.write(kCheckpointMagic, sizeof(kCheckpointMagic));
    put_le<std::uint32_t>(os, kCheckpointVersion);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.n()));
    put_le<double>(os, g.box_side());
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(components.size()));
    for (const auto& c : components)
        for (const Complex& z : c.coeffs()) {
            put_le<double>(os, z.real());
            put_le<double>(os, z.imag());
        }
    if (!os) throw std::runtime_error("write failed for " + path.string());
}

void write_checkpoint(const std::filesystem::path& path, const SpectralVectorField& field) {
    write_checkpoint(path, std::vector<SpectralScalarField>{field[0], field[1], field[2]});
}

void write_checkpoint(const std::filesystem::path& path, const SpectralVectorField& first,
                      const SpectralVectorField& second) {
    write_checkpoint(path, std::vector<SpectralScalarField>{first[0], first[1], first[2], second[0], second[1],
                                                            second[2]});
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    char magic[8];
    if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0)
        throw std::runtime_error("not a checkpoint file: " + path.string());
    const auto version = get_le<std::uint32_t>(is);
    if (version != kCheckpointVersion)
        throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
    const auto n = get_le<std::uint32_t>(is);
    const auto box_side = get_le<double>(is);
    const auto count = get_le<std::uint32_t>(is);

    Checkpoint ckpt;
    ckpt.grid = make_grid(static_cast<int>(n), box_side);
    ckpt.components.reserve(count);
    for (std::uint32_t c = 0; c < count; ++c) {
        SpectralScalarField f(ckpt.grid);
        for (Complex& z : f.coeffs()) {
            const double re = get_le<double>(is);
            const double im = get_le<double>(is);
            z = Complex(re, im);
        }
        ckpt.components.push_back(std::move(f));
    }
    if (is.peek() != std::char_traits<char>::eof()) throw std::runtime_error("trailing bytes in checkpoint");
    return ckpt;
}

SpectralVectorField vector_from_checkpoint(const Checkpoint& ckpt, int first_component) {
    if (first_component < 0 || static_cast<std::size_t>(first_component) + 3 > ckpt.components.size())
        throw ValidationError("checkpoint does not hold a vector field at that offset");
    return SpectralVectorField(ckpt.components[first_component], ckpt.components[first_component + 1],
                               ckpt.components[first_component + 2]);
}

}  // namespace hallmhd
