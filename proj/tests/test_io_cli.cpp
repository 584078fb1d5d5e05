#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lewisper/errors.hpp"
#include "lewisper/io.hpp"
#include "lewisper/maass.hpp"
#include "helpers.hpp"

using namespace lewisper;
using testutil::rel_err;

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() /
                     ("lewisper_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(LEWISPER_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::string line;
    REQUIRE(std::getline(in, line));
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

// The window solve is the one expensive CLI call; run it once and reuse the
// coefficient file across the command tests.
const fs::path& solved_coeff_path() {
    static const fs::path path = [] {
        const fs::path p = work_dir() / "solved.coeff";
        const int rc = run_cli("solve --window 9.4:9.7 --parity odd --kmax 25 -o " +
                               p.string() + " --report " +
                               (work_dir() / "solve_report.txt").string());
        REQUIRE(rc == 0);
        REQUIRE(fs::exists(p));
        return p;
    }();
    return path;
}

const fs::path& perturbed_coeff_path() {
    static const fs::path path = [] {
        const auto data = io::read_coeff_file(solved_coeff_path().string());
        auto coeffs = data.coeffs;
        coeffs[2] *= 1.1;
        coeffs[-2] *= 1.1;
        const auto form = maass::make_form(data.nu, finrep::trivial_rep(), coeffs);
        const fs::path p = work_dir() / "perturbed.coeff";
        io::write_coeff_file(p.string(), form);
        return p;
    }();
    return path;
}

}  // namespace

TEST_CASE("complex entry formatting round trips") {
    for (const cplx z : {cplx(1.5, -2e-3), cplx(-0.25, 0.0), cplx(0.0, 1.0),
                         cplx(6.4908284462060324e-7, 4.4292626969963254e-7),
                         cplx(-1.0e17, 3.25)}) {
        CHECK(io::parse_complex(io::format_complex(z)) == z);
    }
    CHECK(io::parse_complex("1.5-2e-3j") == cplx(1.5, -2e-3));
    CHECK_THROWS_AS((void)io::parse_complex("abc"), ParseError);
    CHECK_THROWS_AS((void)io::parse_complex("1+2i"), ParseError);
    CHECK_THROWS_AS((void)io::parse_complex("1.0"), ParseError);
}

TEST_CASE("representation files round trip") {
    for (const auto& rep :
         {finrep::s3_standard_rep(), finrep::coset_perm_rep(finrep::gamma0_cosets(2))}) {
        const fs::path p = work_dir() / "rep.txt";
        io::write_rep_file(p.string(), rep);
        const auto back = io::read_rep_file(p.string());
        CHECK(back.dim == rep.dim);
        CHECK(back.order_T == rep.order_T);
        CHECK((back.mat_S - rep.mat_S).cwiseAbs().maxCoeff() < 1e-16);
        CHECK((back.mat_T - rep.mat_T).cwiseAbs().maxCoeff() < 1e-16);
    }
}

TEST_CASE("coefficient files round trip") {
    const auto& form = testutil::solved_form();
    const fs::path p = work_dir() / "roundtrip.coeff";
    io::write_coeff_file(p.string(), form);
    const auto data = io::read_coeff_file(p.string());
    CHECK(data.nu.nu == form.nu.nu);
    CHECK(data.period_N == form.period_N);
    CHECK(data.dim == 1);
    const auto back = io::to_form(data);
    REQUIRE(back.coeffs.size() == form.coeffs.size());
    for (const auto& [k, v] : form.coeffs)
        CHECK((back.coeffs.at(k) - v).cwiseAbs().maxCoeff() == 0.0);

    const auto tw = testutil::twisted_form();
    const fs::path q = work_dir() / "twisted.coeff";
    io::write_coeff_file(q.string(), tw);
    const auto tdata = io::read_coeff_file(q.string());
    CHECK(tdata.dim == 2);
    const auto tback = io::to_form(tdata, finrep::s3_standard_rep());
    CHECK((tback.coeffs.at(3) - tw.coeffs.at(3)).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS((void)io::to_form(tdata), InputError);
    CHECK_THROWS_AS((void)io::to_form(tdata, finrep::trivial_rep()), DimensionError);
    // Period header must match the representation's translation order.
    auto wrong = tdata;
    wrong.period_N = 3;
    CHECK_THROWS_AS((void)io::to_form(wrong, finrep::s3_standard_rep()), ParseError);
}

TEST_CASE("malformed files are rejected") {
    const fs::path p = work_dir() / "bad.txt";
    std::ofstream(p) << "dim = 2\n";
    CHECK_THROWS_AS((void)io::read_rep_file(p.string()), ParseError);
    std::ofstream(p) << "nu = 0.3\nN = 1\ndim = 1\n1 0.5 0.5\n";
    CHECK_THROWS_AS((void)io::read_coeff_file(p.string()), ParseError);
    std::ofstream(p) << "nu = 0.3 0\nN = 1\ndim = 1\n1 0.5\n";
    CHECK_THROWS_AS((void)io::read_coeff_file(p.string()), ParseError);
    CHECK_THROWS_AS((void)io::read_coeff_file((work_dir() / "missing").string()),
                    ParseError);
}

TEST_CASE("command line: window solve produces a usable coefficient file") {
    const auto data = io::read_coeff_file(solved_coeff_path().string());
    CHECK(std::abs(data.nu.nu.imag() - 9.533695260764828) < 1e-3);
    CHECK(std::abs(data.coeffs.at(1)[0] - 1.0) < 1e-15);

    const std::string report = slurp(work_dir() / "solve_report.txt");
    CHECK(report.rfind("# lewisper ", 0) == 0);
    CHECK(report.find("=== json ===") != std::string::npos);
    const auto tail = report.substr(report.find("=== json ===") + 13);
    const auto parsed = nlohmann::json::parse(tail);
    CHECK(parsed["command"] == "solve");
    CHECK(std::abs(parsed["results"]["R"].get<double>() - 9.533695260764828) < 1e-3);
}

TEST_CASE("command line: searches that find nothing exit with the I/O code") {
    CHECK(run_cli("solve --window 9.0:9.2 --parity even --kmax 12") == 2);
}

TEST_CASE("command line: functional-equation check on solved and perturbed data") {
    const std::string form = " --form " + solved_coeff_path().string();
    CHECK(run_cli("lewis-check" + form + " --grid 0.1:10:40 --tol 1e-7") == 0);
    CHECK(run_cli("lewis-check --form " + perturbed_coeff_path().string() +
                  " --grid 0.5:3:10 --tol 1e-7") == 1);
}

TEST_CASE("command line: evaluation outputs match the library") {
    const std::string form = " --form " + solved_coeff_path().string();
    const fs::path csv = work_dir() / "eval.csv";
    CHECK(run_cli("eval" + form + " --z 0.1,0.9 --renorm -o " + csv.string()) == 0);
    std::string header;
    const auto rows = read_csv(csv, &header);
    CHECK(header == "x,y,re_0,im_0");
    REQUIRE(rows.size() == 1);
    const auto& lib_form = testutil::solved_form();
    const Vec want = maass::evaluate_renorm(lib_form, cplx(0.1, 0.9));
    CHECK(std::abs(cplx(rows[0][2], rows[0][3]) - want[0]) <
          1e-9 * std::max(1.0, want.norm()));

    const fs::path pcsv = work_dir() / "period.csv";
    CHECK(run_cli("period" + form + " --z 2,0 -o " + pcsv.string()) == 0);
    const auto prows = read_csv(pcsv, nullptr);
    REQUIRE(prows.size() == 1);
    CHECK(rel_err(cplx(prows[0][2], prows[0][3]),
                  cplx(1.099549126966166, -0.4003250010947352)) < 1e-4);
}

TEST_CASE("command line: CSV bodies are identical across thread counts") {
    const std::string form = " --form " + solved_coeff_path().string();
    const fs::path a = work_dir() / "grid1.csv";
    const fs::path b = work_dir() / "grid4.csv";
    CHECK(run_cli("period" + form + " --grid 0.5:8:25 --threads 1 -o " + a.string()) ==
          0);
    CHECK(run_cli("period" + form + " --grid 0.5:8:25 --threads 4 -o " + b.string()) ==
          0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).rfind("x,y,", 0) == 0);
}

TEST_CASE("command line: transfer spectrum") {
    const fs::path csv = work_dir() / "spec.csv";
    CHECK(run_cli("transfer-spec --kind Linf --nu 0.5,0 --basis 40 --count 3 -o " +
                  csv.string()) == 0);
    const auto rows = read_csv(csv, nullptr);
    REQUIRE(rows.size() == 3);
    CHECK(std::abs(rows[0][1] - 1.0) < 1e-8);
    CHECK(std::abs(rows[0][2]) < 1e-10);
    CHECK(std::abs(rows[1][3] - 0.3036630029) < 1e-5);
}

TEST_CASE("command line: completed values and the converse round trip") {
    const std::string form = " --form " + solved_coeff_path().string();
    const fs::path csv = work_dir() / "lfunc.csv";
    CHECK(run_cli("lfunc" + form + " --eps 1 --s 2 --fe-tol 1e-6 -o " + csv.string()) ==
          0);
    const auto rows = read_csv(csv, nullptr);
    REQUIRE(rows.size() == 1);
    // Integral-route value of the underlying form; differs from the
    // truncated-sum value 4.9939e-7 by the coefficient tail.
    CHECK(rel_err(cplx(rows[0][2], rows[0][3]), cplx(5.0027782088e-7, 0.0)) < 1e-4);

    CHECK(run_cli("converse" + form) == 0);
    CHECK(run_cli("converse --form " + perturbed_coeff_path().string()) == 1);
    CHECK(run_cli("asymptotics" + form + " --C 0.9") == 0);
}

TEST_CASE("command line: representation info") {
    CHECK(run_cli("repinfo --rep standard") == 0);
    const fs::path bad = work_dir() / "badrep.txt";
    std::ofstream(bad) << "dim = 1\nN = 2\n1+0j\n-1+0j\n";
    CHECK(run_cli("repinfo --rep " + bad.string()) == 1);
}

TEST_CASE("command line: malformed invocations exit with the parse code") {
    CHECK(run_cli("eval --z 0,1") == 2);                       // missing --form
    CHECK(run_cli("period --form " + solved_coeff_path().string() +
                  " --grid nonsense") == 2);
    CHECK(run_cli("eval --form " + (work_dir() / "missing.coeff").string() +
                  " --z 0,1") == 2);
    CHECK(run_cli("frobnicate") == 2);
}
