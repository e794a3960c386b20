#include "doctest.h"
#include "support.hpp"

#include <cstring>
#include <filesystem>

#include "symtomo/error.hpp"
#include "symtomo/io.hpp"

using namespace symtomo;
using namespace testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "symtomo-io-test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("number formatting keeps 17 significant digits")
{
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(1.0) == "1");
    CHECK(std::stod(io::format_double(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("wavefunction JSON round trip is bit exact")
{
    const Grid1D g(-3.7, 5.1, 64, 0.73);
    Rng rng(2);
    std::vector<cplx> v(64);
    for (auto& z : v) z = {rng.uniform(-1, 1) / 3.0, rng.uniform(-1, 1) * 1e-7};
    const SampledWavefunction psi(g, v);
    const fs::path dir = scratch("wf");
    io::write_wavefunction_json(dir / "psi.json", psi);
    const SampledWavefunction back = io::read_wavefunction(dir / "psi.json", 99.0);
    CHECK(back.grid() == g);
    for (std::size_t j = 0; j < 64; ++j) {
        CHECK(bit_equal(back[j].real(), v[j].real()));
        CHECK(bit_equal(back[j].imag(), v[j].imag()));
    }
    CHECK(io::wavefunction_from_json(io::wavefunction_to_json(psi)).values()[5] == v[5]);
    CHECK_FALSE(fs::exists(dir / "psi.json.tmp"));
}

TEST_CASE("wavefunction CSV round trip")
{
    const Grid1D g(-4, 4, 32, 1.0);
    const auto psi = SampledWavefunction::from_function(g, [](double x) { return chirped_gaussian(x, 0.6, 0.2, 1.0); });
    const fs::path dir = scratch("csv");
    io::write_wavefunction_csv(dir / "psi.csv", psi);
    const std::string text = io::read_file(dir / "psi.csv");
    CHECK(text.rfind("x,re,im\n", 0) == 0);
    const SampledWavefunction back = io::read_wavefunction(dir / "psi.csv", 1.0);
    CHECK(back.size() == 32);
    CHECK(back.grid().x_min() == -4.0);
    CHECK(back.grid().dx() == doctest::Approx(0.25).epsilon(1e-15));
    for (std::size_t j = 0; j < 32; ++j) CHECK(back[j] == psi[j]);
}

TEST_CASE("malformed wavefunction files")
{
    const fs::path dir = scratch("bad");
    CHECK_THROWS_AS(io::read_wavefunction(dir / "missing.json", 1.0), FormatError);
    io::write_file_atomic(dir / "broken.json", "{ not json");
    CHECK_THROWS_AS(io::read_wavefunction(dir / "broken.json", 1.0), FormatError);
    io::write_file_atomic(dir / "wrong.json", R"({"format": "symtomo.wigner"})");
    CHECK_THROWS_AS(io::read_wavefunction(dir / "wrong.json", 1.0), FormatError);
    io::write_file_atomic(dir / "short.json",
                          R"({"format": "symtomo.wavefunction", "grid": {"x_min": 0, "x_max": 1, "n_points": 8, "hbar": 1}, "values": [1, 2]})");
    CHECK_THROWS_AS(io::read_wavefunction(dir / "short.json", 1.0), FormatError);
    io::write_file_atomic(dir / "bad.csv", "x,re,im\n0,1\n");
    CHECK_THROWS_AS(io::read_wavefunction(dir / "bad.csv", 1.0), FormatError);
}

TEST_CASE("Wigner map files")
{
    const Grid1D g(-4, 4, 16);
    const auto psi = SampledWavefunction::from_function(g, [](double x) { return ground(x); });
    const WignerMap w = wigner_transform(psi, Axis{-2.0, 0.5, 9});
    const fs::path dir = scratch("wigner");
    io::write_wigner_binary(dir / "w.json", w);
    io::write_wigner_csv(dir / "w.csv", w);
    CHECK(fs::file_size(dir / "w.bin") == 16 * 9 * sizeof(double));

    const WignerMap back = io::read_wigner_binary(dir / "w.json");
    CHECK(back.x_grid() == g);
    CHECK(back.p_axis() == w.p_axis());
    CHECK(back.values() == w.values());
    CHECK(back.max_imag_residue == w.max_imag_residue);

    const std::string csv = io::read_file(dir / "w.csv");
    CHECK(csv.rfind("x,p,W\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 16 * 9);

    fs::remove(dir / "w.bin");
    CHECK_THROWS_AS(io::read_wigner_binary(dir / "w.json"), FormatError);
}

TEST_CASE("tomogram set files")
{
    const Grid1D g(-8, 8, 128);
    const auto psi = SampledWavefunction::from_function(g, [](double x) { return ground(x); });
    const TomogramSet set = make_tomogram_set(psi, 10, RadonRoute::metaplectic);
    for (auto format : {io::BlockFormat::csv, io::BlockFormat::f64}) {
        const fs::path dir = scratch(format == io::BlockFormat::csv ? "set-csv" : "set-f64");
        io::write_tomogram_set(dir / "set.json", set, format);
        const TomogramSet back = io::read_tomogram_set(dir / "set.json");
        REQUIRE(back.size() == 10);
        CHECK(back.x_axis() == set.x_axis());
        CHECK(back.hbar() == 1.0);
        for (std::size_t k = 0; k < 10; ++k) {
            CHECK(back.tomograms()[k].values() == set.tomograms()[k].values());
            CHECK(back.tomograms()[k].params().mu == set.tomograms()[k].params().mu);
            CHECK(back.tomograms()[k].params().nu == set.tomograms()[k].params().nu);
            CHECK(back.tomograms()[k].route() == RadonRoute::metaplectic);
        }
        const auto manifest = nlohmann::json::parse(io::read_file(dir / "set.json"));
        CHECK(manifest["angles"].size() == 10);
        CHECK(manifest["blocks"][3]["route"] == "metaplectic");
    }
    CHECK(io::parse_block_format("f64") == io::BlockFormat::f64);
    CHECK_THROWS_AS(io::parse_block_format("npy"), ConfigError);

    const fs::path dir = scratch("set-bad");
    io::write_file_atomic(dir / "set.json", R"({"format": "symtomo.tomogram-set", "hbar": 1})");
    CHECK_THROWS_AS(io::read_tomogram_set(dir / "set.json"), FormatError);
    io::write_tomogram_set(dir / "ok.json", set, io::BlockFormat::csv);
    io::write_file_atomic(dir / "tomo_0002.csv", "X,R\n0,1\n");
    CHECK_THROWS_AS(io::read_tomogram_set(dir / "ok.json"), FormatError);
}

TEST_CASE("matrix JSON is row-major")
{
    Matrix m(2, 3);
    m << 1, 2, 3, 4, 5, 6;
    const auto j = io::matrix_to_json(m);
    CHECK(j["data"][1] == 2.0);
    CHECK(j["data"][3] == 4.0);
    CHECK(io::matrix_from_json(j) == m);
    CHECK_THROWS_AS(io::matrix_from_json(nlohmann::json{{"rows", 2}, {"cols", 2}, {"data", {1, 2, 3}}}), FormatError);
}
