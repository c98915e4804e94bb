#pragma once

#include <filesystem>
#include <vector>

#include "hallmhd/field.hpp"

namespace hallmhd {

// Binary layout, all integers and floats little-endian:
//   char[8]   magic "HMHDCKPT"
//   uint32    version (1)
//   uint32    n
//   float64   box_side
//   uint32    component count
//   then, per component, n^3 pairs (re, im) of float64 in row-major lattice
//   order (axis 1 slowest, FFT index order 0..n-1 along each axis).

inline constexpr char kCheckpointMagic[8] = {'H', 'M', 'H', 'D', 'C', 'K', 'P', 'T'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
    GridSpec grid;
    std::vector<SpectralScalarField> components;
};

void write_checkpoint(const std::filesystem::path& path, const std::vector<SpectralScalarField>& components);
void write_checkpoint(const std::filesystem::path& path, const SpectralVectorField& field);
void write_checkpoint(const std::filesystem::path& path, const SpectralVectorField& first,
                      const SpectralVectorField& second);

/// Throws std::runtime_error on a malformed or truncated file.
Checkpoint read_checkpoint(const std::filesystem::path& path);
SpectralVectorField vector_from_checkpoint(const Checkpoint& ckpt, int first_component = 0);

}  // namespace hallmhd
