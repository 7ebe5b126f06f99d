#pragma once

#include <filesystem>

#include "gpcal/infer/sampler.hpp"

namespace gpcal {

// Archive file layout: "# key = value" metadata (seed, config fingerprint,
// scenario, model, chains, stream and parameter names, any model constants),
// then the columnar samples. Doubles carry 17 significant digits, so
// write/read/write is byte identical.
void write_archive(const std::filesystem::path& file, const PosteriorArchive& archive);
PosteriorArchive read_archive(const std::filesystem::path& file);

}  // namespace gpcal
