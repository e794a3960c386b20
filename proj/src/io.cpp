#include "symtomo/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "symtomo/error.hpp"

namespace symtomo::io {

static_assert(std::endian::native == std::endian::little, "binary blocks assume a little-endian host");

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file_atomic(const fs::path& path, std::string_view content)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw FormatError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

json parse_json_file(const fs::path& path)
{
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

template <class T>
T field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad field '") + key + "': " + e.what());
    }
}

void expect_format(const json& j, const char* name)
{
    if (field<std::string>(j, "format") != name)
        throw FormatError(std::string("expected a '") + name + "' document");
}

std::vector<std::vector<double>> parse_csv(const fs::path& path, std::size_t columns)
{
    std::istringstream in(read_file(path));
    std::string line;
    std::vector<std::vector<double>> rows;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.find_first_of("0123456789") == std::string::npos || std::isalpha(static_cast<unsigned char>(line[0])))
                continue;
        }
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                throw FormatError(path.string() + ": unparsable value '" + cell + "'");
            }
        }
        if (row.size() != columns) throw FormatError(path.string() + ": expected " + std::to_string(columns) + " columns");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string block_name(std::size_t k, BlockFormat format)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "tomo_%04zu.%s", k, format == BlockFormat::csv ? "csv" : "f64");
    return buf;
}

std::string pack_f64(const std::vector<double>& v)
{
    std::string out(v.size() * sizeof(double), '\0');
    std::memcpy(out.data(), v.data(), out.size());
    return out;
}

std::vector<double> unpack_f64(const std::string& bytes, std::size_t expected, const fs::path& path)
{
    if (bytes.size() != expected * sizeof(double))
        throw FormatError(path.string() + ": expected " + std::to_string(expected) + " float64 values");
    std::vector<double> v(expected);
    std::memcpy(v.data(), bytes.data(), bytes.size());
    return v;
}

}  // namespace

json grid_to_json(const Grid1D& grid)
{
    return {{"x_min", grid.x_min()}, {"x_max", grid.x_max()}, {"n_points", grid.size()}, {"hbar", grid.hbar()}};
}

Grid1D grid_from_json(const json& j)
{
    return Grid1D(field<double>(j, "x_min"), field<double>(j, "x_max"), field<std::size_t>(j, "n_points"),
                  field<double>(j, "hbar"));
}

json axis_to_json(const Axis& axis) { return {{"start", axis.start}, {"step", axis.step}, {"size", axis.size}}; }

Axis axis_from_json(const json& j)
{
    Axis a{field<double>(j, "start"), field<double>(j, "step"), field<std::size_t>(j, "size")};
    if (a.size == 0 || !(a.step > 0.0)) throw FormatError("axis needs a positive step and size");
    return a;
}

json wavefunction_to_json(const SampledWavefunction& psi)
{
    std::vector<double> interleaved;
    interleaved.reserve(2 * psi.size());
    for (const auto& v : psi.values()) {
        interleaved.push_back(v.real());
        interleaved.push_back(v.imag());
    }
    return {{"format", "symtomo.wavefunction"}, {"version", 1}, {"grid", grid_to_json(psi.grid())},
            {"values", interleaved}};
}

SampledWavefunction wavefunction_from_json(const json& j)
{
    expect_format(j, "symtomo.wavefunction");
    const Grid1D grid = grid_from_json(field<json>(j, "grid"));
    const auto interleaved = field<std::vector<double>>(j, "values");
    if (interleaved.size() != 2 * grid.size()) throw FormatError("wavefunction: expected 2 * n_points values");
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = {interleaved[2 * i], interleaved[2 * i + 1]};
    return {grid, std::move(v)};
}

void write_wavefunction_json(const fs::path& path, const SampledWavefunction& psi)
{
    write_file_atomic(path, wavefunction_to_json(psi).dump());
}

void write_wavefunction_csv(const fs::path& path, const SampledWavefunction& psi)
{
    std::string out = "x,re,im\n";
    for (std::size_t j = 0; j < psi.size(); ++j)
        out += format_double(psi.grid().x(j)) + "," + format_double(psi[j].real()) + "," + format_double(psi[j].imag()) + "\n";
    write_file_atomic(path, out);
}

SampledWavefunction read_wavefunction_json(const fs::path& path) { return wavefunction_from_json(parse_json_file(path)); }

SampledWavefunction read_wavefunction_csv(const fs::path& path, double hbar)
{
    const auto rows = parse_csv(path, 3);
    if (rows.size() < 8) throw FormatError(path.string() + ": too few rows for a grid");
    const std::size_t n = rows.size();
    const double x0 = rows.front()[0];
    const double dx = (rows.back()[0] - x0) / static_cast<double>(n - 1);
    const Grid1D grid(x0, x0 + static_cast<double>(n) * dx, n, hbar);
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(rows[i][0] - grid.x(i)) > 1e-9 * std::max(1.0, std::abs(grid.x(i))))
            throw FormatError(path.string() + ": x column is not uniform");
        v[i] = {rows[i][1], rows[i][2]};
    }
    return {grid, std::move(v)};
}

SampledWavefunction read_wavefunction(const fs::path& path, double hbar)
{
    if (!fs::exists(path)) throw FormatError("no such file: " + path.string());
    if (path.extension() == ".csv") return read_wavefunction_csv(path, hbar);
    return read_wavefunction_json(path);
}

void write_wigner_csv(const fs::path& path, const WignerMap& w)
{
    std::string out = "x,p,W\n";
    out.reserve(w.nx() * w.np() * 64);
    for (std::size_t i = 0; i < w.nx(); ++i) {
        const std::string x = format_double(w.x_grid().x(i)) + ",";
        for (std::size_t k = 0; k < w.np(); ++k)
            out += x + format_double(w.p_axis()[k]) + "," + format_double(w(i, k)) + "\n";
    }
    write_file_atomic(path, out);
}

void write_wigner_binary(const fs::path& manifest, const WignerMap& w)
{
    fs::path data = manifest;
    data.replace_extension(".bin");
    write_file_atomic(data, pack_f64(w.values()));
    const json header = {{"format", "symtomo.wigner"},
                         {"version", 1},
                         {"grid", grid_to_json(w.x_grid())},
                         {"p_axis", axis_to_json(w.p_axis())},
                         {"data_file", data.filename().string()},
                         {"dtype", "float64-le"},
                         {"layout", "row-major, x outer, p inner"},
                         {"max_imag_residue", w.max_imag_residue},
                         {"accuracy_warning", w.accuracy_warning}};
    write_file_atomic(manifest, header.dump(2));
}

WignerMap read_wigner_binary(const fs::path& manifest)
{
    const json j = parse_json_file(manifest);
    expect_format(j, "symtomo.wigner");
    const Grid1D grid = grid_from_json(field<json>(j, "grid"));
    const Axis p = axis_from_json(field<json>(j, "p_axis"));
    const fs::path data = manifest.parent_path() / field<std::string>(j, "data_file");
    WignerMap w(grid, p, unpack_f64(read_file(data), grid.size() * p.size, data));
    if (j.contains("max_imag_residue")) w.max_imag_residue = j["max_imag_residue"].get<double>();
    if (j.contains("accuracy_warning")) w.accuracy_warning = j["accuracy_warning"].get<bool>();
    return w;
}

BlockFormat parse_block_format(std::string_view name)
{
    if (name == "csv") return BlockFormat::csv;
    if (name == "f64") return BlockFormat::f64;
    throw ConfigError("unknown block format '" + std::string(name) + "' (csv or f64)");
}

void write_tomogram_set(const fs::path& manifest, const TomogramSet& set, BlockFormat format)
{
    const fs::path dir = manifest.parent_path();
    json blocks = json::array();
    json angles = json::array();
    for (std::size_t k = 0; k < set.size(); ++k) {
        const Tomogram& t = set.tomograms()[k];
        const std::string name = block_name(k, format);
        if (format == BlockFormat::csv) {
            std::string out = "X,R\n";
            for (std::size_t i = 0; i < t.size(); ++i)
                out += format_double(t.x_axis()[i]) + "," + format_double(t[i]) + "\n";
            write_file_atomic(dir / name, out);
        } else {
            write_file_atomic(dir / name, pack_f64(t.values()));
        }
        angles.push_back(t.params().angle());
        blocks.push_back({{"file", name},
                          {"theta", t.params().angle()},
                          {"mu", t.params().mu},
                          {"nu", t.params().nu},
                          {"route", to_string(t.route())},
                          {"accuracy_warning", t.accuracy_warning}});
    }
    const json header = {{"format", "symtomo.tomogram-set"},
                         {"version", 1},
                         {"hbar", set.hbar()},
                         {"x_axis", axis_to_json(set.x_axis())},
                         {"block_format", format == BlockFormat::csv ? "csv" : "f64"},
                         {"angles", angles},
                         {"blocks", blocks}};
    write_file_atomic(manifest, header.dump(2));
}

TomogramSet read_tomogram_set(const fs::path& manifest)
{
    const json j = parse_json_file(manifest);
    expect_format(j, "symtomo.tomogram-set");
    const double hbar = field<double>(j, "hbar");
    const Axis axis = axis_from_json(field<json>(j, "x_axis"));
    const BlockFormat format = parse_block_format(field<std::string>(j, "block_format"));
    const auto blocks = field<json>(j, "blocks");
    if (!blocks.is_array() || blocks.empty()) throw FormatError("tomogram set: no blocks");

    std::vector<Tomogram> tomograms;
    for (const auto& b : blocks) {
        const fs::path path = manifest.parent_path() / field<std::string>(b, "file");
        std::vector<double> values;
        if (format == BlockFormat::csv) {
            const auto rows = parse_csv(path, 2);
            if (rows.size() != axis.size) throw FormatError(path.string() + ": row count does not match X axis");
            for (const auto& r : rows) values.push_back(r[1]);
        } else {
            values = unpack_f64(read_file(path), axis.size, path);
        }
        const auto params = RotationParams::make(field<double>(b, "mu"), field<double>(b, "nu"));
        const RadonRoute route = b.contains("route") ? parse_route(b["route"].get<std::string>()) : RadonRoute::metaplectic;
        Tomogram t(params, axis, std::move(values), hbar, route);
        if (b.contains("accuracy_warning")) t.accuracy_warning = b["accuracy_warning"].get<bool>();
        tomograms.push_back(std::move(t));
    }
    return TomogramSet(std::move(tomograms));
}

json matrix_to_json(const Matrix& m)
{
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const json& j)
{
    const auto rows = field<Eigen::Index>(j, "rows");
    const auto cols = field<Eigen::Index>(j, "cols");
    const auto data = field<std::vector<double>>(j, "data");
    if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != data.size())
        throw FormatError("matrix: data length does not match shape");
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[static_cast<std::size_t>(r * cols + c)];
    return m;
}

}  // namespace symtomo::io
