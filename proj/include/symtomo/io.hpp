#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "symtomo/grid.hpp"
#include "symtomo/metaplectic.hpp"
#include "symtomo/radon.hpp"
#include "symtomo/wigner.hpp"

namespace symtomo::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

/// 17 significant digits (%.17g), the CSV number format.
std::string format_double(double v);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const fs::path& path, std::string_view content);
std::string read_file(const fs::path& path);

json grid_to_json(const Grid1D& grid);
Grid1D grid_from_json(const json& j);
json axis_to_json(const Axis& axis);
Axis axis_from_json(const json& j);

/// {"format": "symtomo.wavefunction", "grid": {...}, "values": [re0, im0, re1, im1, ...]}
json wavefunction_to_json(const SampledWavefunction& psi);
SampledWavefunction wavefunction_from_json(const json& j);
void write_wavefunction_json(const fs::path& path, const SampledWavefunction& psi);
/// Columns x,re,im with a header row.
void write_wavefunction_csv(const fs::path& path, const SampledWavefunction& psi);
SampledWavefunction read_wavefunction_json(const fs::path& path);
/// The grid is inferred from the x column; hbar is supplied by the caller.
SampledWavefunction read_wavefunction_csv(const fs::path& path, double hbar);
/// Dispatches on the extension (.json or .csv).
SampledWavefunction read_wavefunction(const fs::path& path, double hbar);

/// Long format x,p,W.
void write_wigner_csv(const fs::path& path, const WignerMap& w);
/// JSON header at `manifest` plus a row-major little-endian float64 block next to it.
void write_wigner_binary(const fs::path& manifest, const WignerMap& w);
WignerMap read_wigner_binary(const fs::path& manifest);

enum class BlockFormat { csv, f64 };
BlockFormat parse_block_format(std::string_view name);

/// Manifest (hbar, angles, X axis, one entry per block) plus one block file per tomogram.
void write_tomogram_set(const fs::path& manifest, const TomogramSet& set, BlockFormat format);
TomogramSet read_tomogram_set(const fs::path& manifest);

/// {"rows": r, "cols": c, "data": [row-major entries]}
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

}  // namespace symtomo::io
