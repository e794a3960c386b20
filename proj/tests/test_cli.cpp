#include "doctest.h"
#include "support.hpp"

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "symtomo/io.hpp"

using namespace testing;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result tomo(std::vector<std::string> args)
{
    args.insert(args.begin(), "tomo");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = symtomo::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "symtomo-cli-test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::vector<double>> read_csv(const fs::path& path)
{
    std::istringstream in(symtomo::io::read_file(path));
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("wigner command")
{
    const fs::path dir = scratch("wigner");
    const Result r = tomo({"wigner", "--state", "gaussian:0.5,0", "--grid=-8:8:256", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "wigner.json"));
    CHECK(fs::exists(dir / "wigner.bin"));
    bool found = false;
    for (const auto& row : read_csv(dir / "wigner.csv"))
        if (row[0] == 0.0 && row[1] == 0.0) {
            CHECK(std::abs(row[2] - 1 / pi) <= 1e-6);
            found = true;
        }
    CHECK(found);
    CHECK(std::abs(json::parse(r.out)["origin_value"].get<double>() - 1 / pi) <= 1e-6);

    CHECK(tomo({"wigner", "--state", "gaussian:0.5,0", "--grid=-16:16:1000", "--out", dir.string()}).code == 2);
    const Result missing = tomo({"wigner", "--state", "file:" + (dir / "nope.json").string(), "--out", dir.string()});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("not found") != std::string::npos);
    CHECK(tomo({"wigner", "--state", "gaussian:0.5", "--out", dir.string()}).code == 2);
    CHECK(tomo({"wigner", "--state", "gaussian:0.5,0", "--hbar", "-1", "--out", dir.string()}).code == 2);
}

TEST_CASE("wigner command reads a stored wavefunction")
{
    const fs::path dir = scratch("wigner-file");
    const symtomo::Grid1D g(-8, 8, 128);
    const auto psi = symtomo::SampledWavefunction::from_function(g, [](double x) { return ground(x); });
    symtomo::io::write_wavefunction_json(dir / "psi.json", psi);
    const Result r = tomo({"wigner", "--state", "file:" + (dir / "psi.json").string(), "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(symtomo::io::read_wigner_binary(dir / "wigner.json").nx() == 128);
}

TEST_CASE("tomogram command")
{
    const fs::path dir = scratch("tomogram");
    const Result r = tomo({"tomogram", "--state", "gaussian:1,0", "--mu", "1", "--nu", "0", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto rows = read_csv(dir / "tomo_0000.csv");
    REQUIRE(rows.size() == 1024);
    double err = 0.0;
    for (const auto& row : rows) err = std::max(err, std::abs(row[1] - std::exp(-row[0] * row[0] / 2) / std::sqrt(2 * pi)));
    CHECK(err <= 1e-7);
    const auto manifest = json::parse(symtomo::io::read_file(dir / "tomograms.json"));
    CHECK(manifest["blocks"][0]["route"] == "metaplectic");

    const fs::path sweep = scratch("sweep");
    REQUIRE(tomo({"tomogram", "--state", "gaussian:1,0.2", "--angles", "360", "--grid=-8:8:128", "--format", "f64",
                  "--route", "chirp-fft", "--out", sweep.string()})
                .code == 0);
    const auto m = json::parse(symtomo::io::read_file(sweep / "tomograms.json"));
    CHECK(m["blocks"].size() == 360);
    CHECK(m["angles"].size() == 360);
    CHECK(m["blocks"][0]["route"] == "metaplectic");
    CHECK(m["blocks"][1]["route"] == "chirp-fft");

    const fs::path line = scratch("line");
    REQUIRE(tomo({"tomogram", "--state", "gaussian:1,0", "--mu", "0.6", "--nu", "0.8", "--grid=-8:8:128",
                  "--route", "line-integral", "--out", line.string()})
                .code == 0);
    CHECK(json::parse(symtomo::io::read_file(line / "tomograms.json"))["blocks"][0]["route"] == "line-integral");

    CHECK(tomo({"tomogram", "--state", "gaussian:1,0", "--mu", "0", "--nu", "0", "--out", dir.string()}).code == 2);
    const Result chirp = tomo({"tomogram", "--state", "gaussian:1,0", "--mu", "1", "--nu", "0", "--route", "chirp-fft",
                               "--out", dir.string()});
    CHECK(chirp.code == 2);
    CHECK(chirp.err.find("nu != 0") != std::string::npos);
    CHECK(tomo({"tomogram", "--state", "gaussian:1,0", "--mu", "1", "--out", dir.string()}).code == 2);
    CHECK(tomo({"tomogram", "--state", "gaussian:1,0", "--mu", "1", "--nu", "1", "--angles", "8", "--out", dir.string()}).code == 2);
    CHECK(tomo({"tomogram", "--state", "gaussian:1,0", "--mu", "1", "--nu", "1", "--route", "radial", "--out", dir.string()}).code == 2);
}

TEST_CASE("identical configuration gives byte-identical CSV")
{
    const fs::path a = scratch("det-a"), b = scratch("det-b");
    for (const auto& dir : {a, b})
        REQUIRE(tomo({"tomogram", "--state", "gaussian:1.3,-0.4", "--angles", "16", "--grid=-8:8:256", "--out", dir.string()}).code == 0);
    for (int k = 0; k < 16; ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "tomo_%04d.csv", k);
        CHECK(symtomo::io::read_file(a / name) == symtomo::io::read_file(b / name));
    }
}

TEST_CASE("invert command")
{
    const fs::path ref = scratch("invert-ref"), set = scratch("invert-set"), out = scratch("invert-out");
    REQUIRE(tomo({"wigner", "--state", "gaussian:0.5,0", "--out", ref.string()}).code == 0);
    REQUIRE(tomo({"tomogram", "--state", "gaussian:0.5,0", "--angles", "360", "--format", "f64", "--out", set.string()}).code == 0);
    const Result r = tomo({"invert", "--in", (set / "tomograms.json").string(), "--reference", (ref / "wigner.json").string(),
                           "--out", out.string()});
    REQUIRE(r.code == 0);
    const auto report = json::parse(symtomo::io::read_file(out / "report.json"));
    CHECK(report["reference"]["linf_residual"].get<double>() <= 1e-3);
    CHECK(report["angles"] == 360);
    CHECK(fs::exists(out / "wigner.csv"));

    const fs::path few = scratch("invert-few");
    REQUIRE(tomo({"tomogram", "--state", "gaussian:0.5,0", "--angles", "4", "--grid=-8:8:128", "--out", few.string()}).code == 0);
    CHECK(tomo({"invert", "--in", (few / "tomograms.json").string(), "--out", out.string()}).code == 2);

    const fs::path small = scratch("invert-small");
    REQUIRE(tomo({"tomogram", "--state", "gaussian:0.5,0", "--angles", "64", "--grid=-8:8:128", "--out", small.string()}).code == 0);
    CHECK(tomo({"invert", "--in", (small / "tomograms.json").string(), "--out", out.string()}).code == 0);
    CHECK(tomo({"invert", "--in", (small / "tomograms.json").string(), "--reference", (ref / "wigner.json").string(),
                "--out", out.string()})
              .code == 2);

    symtomo::io::write_file_atomic(few / "broken.json", "{\"format\": \"symtomo.tomogram-set\", \"blocks\": 3}");
    CHECK(tomo({"invert", "--in", (few / "broken.json").string(), "--out", out.string()}).code == 2);
    CHECK(tomo({"invert", "--in", (few / "absent.json").string(), "--out", out.string()}).code == 2);
}

TEST_CASE("pauli-demo command")
{
    const Result r = tomo({"pauli-demo", "--state", "gaussian:1,0.4"});
    REQUIRE(r.code == 0);
    const auto report = json::parse(r.out);
    CHECK(report["twin"]["sigma_xp"].get<double>() == -0.4);
    CHECK(report["marginals"]["identical"] == true);
    CHECK(report["sign"] == "+");
    CHECK(report["margin_over_tolerance"].get<double>() > 10.0);
    CHECK(std::abs(report["recovered"]["sigma_xp"].get<double>() - 0.4) <= 1e-4);
    CHECK(report["extra_tomogram"]["linf_difference"].get<double>() > 1e-2);

    const auto moot = json::parse(tomo({"pauli-demo", "--state", "gaussian:1,0"}).out);
    CHECK(moot["sign"] == "moot");
    CHECK(moot["sign_moot"] == true);

    CHECK(tomo({"pauli-demo", "--state", "gaussian:1,0.3,0.1"}).code == 2);
    CHECK(tomo({"pauli-demo", "--state", "file:whatever.json"}).code == 2);
    CHECK(tomo({"pauli-demo", "--state", "gaussian:1,0.4", "--mu", "0"}).code == 2);
}

TEST_CASE("check command")
{
    const Result r = tomo({"check"});
    CHECK(r.code == 0);
    std::size_t rows = 0;
    std::istringstream in(r.out);
    std::string line;
    while (std::getline(in, line))
        if (line.find(" PASS ") != std::string::npos || line.find(" FAIL ") != std::string::npos) ++rows;
    CHECK(rows >= 12);

    const Result injected = tomo({"check", "--inject-fbp-error", "--grid=-16:16:512", "--angles", "180"});
    CHECK(injected.code == 1);
    CHECK(injected.out.find("fbp_round_trip                   FAIL") != std::string::npos);

    const Result a = tomo({"check", "--seed", "42", "--grid=-16:16:512", "--angles", "180"});
    const Result b = tomo({"check", "--seed", "42", "--grid=-16:16:512", "--angles", "180"});
    CHECK(a.out == b.out);
    CHECK(a.code == 0);
}

TEST_CASE("usage errors")
{
    CHECK(tomo({}).code == 2);
    CHECK(tomo({"frobnicate"}).code == 2);
    CHECK(tomo({"wigner", "--state", "gaussian:1,0", "--bogus"}).code == 2);
    CHECK(tomo({"wigner"}).code == 2);
    CHECK(tomo({"wigner", "--help"}).code == 0);
}
