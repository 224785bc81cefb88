#include "catch_amalgamated.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "bvm/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "bvm_cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

CliResult run_cli(const std::string& args, const fs::path& scratch) {
    const std::string out_file = (scratch / "stdout.txt").string();
    const std::string err_file = (scratch / "stderr.txt").string();
    const std::string cmd =
        std::string(BVM_CLI_PATH) + " " + args + " >" + out_file + " 2>" + err_file;
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = bvm::io::read_text_file(out_file);
    r.err = bvm::io::read_text_file(err_file);
    return r;
}

std::string write_config(const fs::path& dir, const std::string& text) {
    const std::string path = (dir / "config.json").string();
    bvm::io::write_text_file(path, text);
    return path;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

// numeric field at `column` of every data row
std::vector<double> csv_column(const std::string& text, std::size_t column) {
    std::vector<double> values;
    const std::vector<std::string> rows = lines_of(text);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        std::istringstream in(rows[r]);
        std::string cell;
        for (std::size_t c = 0; std::getline(in, cell, ','); ++c)
            if (c == column) values.push_back(std::stod(cell));
    }
    return values;
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("static solve on the disk writes the constant density and field tables") {
    const fs::path dir = fresh_dir("static_disk");
    const std::string cfg = write_config(dir, R"({
      "curve": {"kind": "circle"},
      "mesh": {"N": 32},
      "gamma": 1.0,
      "method": "vortex",
      "eval_circle": {"radius": 3.0, "count": 16}
    })");

    CliResult r = run_cli("--config " + cfg + " --out " + dir.string() + " static", dir);
    INFO(r.err);
    REQUIRE(r.code == 0);
    REQUIRE(contains(r.out, "wrote"));

    const std::string density = bvm::io::read_text_file((dir / "density.csv").string());
    REQUIRE(lines_of(density).size() == 33);
    REQUIRE(lines_of(density)[0] == "index,s_i,gamma_i");
    for (double g : csv_column(density, 2)) REQUIRE(std::abs(g - 1.0) <= 1e-10);

    const std::string field = bvm::io::read_text_file((dir / "field.csv").string());
    REQUIRE(lines_of(field).size() == 17);
    REQUIRE(lines_of(field)[0] == "x,y,ux,uy");

    const std::string summary = bvm::io::read_text_file((dir / "summary.json").string());
    REQUIRE(contains(summary, "\"method\": \"vortex\""));
    REQUIRE(contains(summary, "\"n\": 32"));
    REQUIRE(contains(summary, "\"circulation_expected\": 1"));
    // vortex runs report tangency but have no charge-side diagnostics
    REQUIRE_FALSE(contains(summary, "\"tangency_max\": null"));
    REQUIRE(contains(summary, "\"rhs_mean\": null"));
    REQUIRE(contains(summary, "\"dominance_min_margin\": null"));
}

TEST_CASE("the method flag overrides the configured solver") {
    const fs::path dir = fresh_dir("static_charge");
    const std::string cfg = write_config(dir, R"({
      "curve": {"kind": "circle"},
      "mesh": {"N": 32},
      "gamma": 0.5,
      "method": "vortex",
      "eval_circle": {"radius": 3.0, "count": 8}
    })");

    CliResult r =
        run_cli("--config " + cfg + " --out " + dir.string() + " static --method charge", dir);
    INFO(r.err);
    REQUIRE(r.code == 0);

    const std::string density = bvm::io::read_text_file((dir / "density.csv").string());
    REQUIRE(lines_of(density)[0] == "index,s_i,q_i");

    const std::string summary = bvm::io::read_text_file((dir / "summary.json").string());
    REQUIRE(contains(summary, "\"method\": \"charge\""));
    REQUIRE(contains(summary, "\"tangency_max\": null"));
    REQUIRE_FALSE(contains(summary, "\"rhs_mean\": null"));
    REQUIRE_FALSE(contains(summary, "\"dominance_min_margin\": null"));
}

TEST_CASE("configuration failures exit with code 2 and a pointed message") {
    const fs::path dir = fresh_dir("config_errors");
    const std::string out = " --out " + dir.string() + " ";

    SECTION("malformed json reports the position") {
        const std::string cfg = write_config(dir, "{\n  \"curve\": {\"kind\": \"circle\",\n");
        CliResult r = run_cli("--config " + cfg + out + "geom", dir);
        REQUIRE(r.code == 2);
        REQUIRE(contains(r.err, "config error"));
        REQUIRE(contains(r.err, "line"));
        REQUIRE(contains(r.err, "column"));
    }
    SECTION("unknown keys are named") {
        const std::string cfg =
            write_config(dir, R"({"curve": {"kind": "circle"}, "surprise": 1})");
        CliResult r = run_cli("--config " + cfg + out + "geom", dir);
        REQUIRE(r.code == 2);
        REQUIRE(contains(r.err, "unknown key"));
    }
    SECTION("converge needs enough mesh sizes for a fit") {
        const std::string cfg = write_config(dir, R"({
          "curve": {"kind": "circle"}, "mesh": {"N": 16}, "method": "vortex",
          "vorticity": [{"center": [2.0, 0.0], "strength": 1.0}], "n_list": [16]
        })");
        CliResult r = run_cli("--config " + cfg + out + "converge", dir);
        REQUIRE(r.code == 2);
        REQUIRE(contains(r.err, "at least 3"));
    }
    SECTION("a blob inside the obstacle is rejected") {
        const std::string cfg = write_config(dir, R"({
          "curve": {"kind": "circle"}, "mesh": {"N": 16},
          "vorticity": [{"center": [0.5, 0.0], "strength": 1.0}]
        })");
        CliResult r = run_cli("--config " + cfg + out + "static", dir);
        REQUIRE(r.code == 2);
        REQUIRE(contains(r.err, "config error"));
    }
    SECTION("unknown subcommands fail to parse") {
        const std::string cfg = write_config(dir, R"({"curve": {"kind": "circle"}})");
        CliResult r = run_cli("--config " + cfg + out + "bogus", dir);
        REQUIRE(r.code == 2);
    }
    SECTION("the config path is required") {
        CliResult r = run_cli("geom", dir);
        REQUIRE(r.code == 2);
    }
}

TEST_CASE("a blob driven into the boundary exits with the solver code") {
    const fs::path dir = fresh_dir("collision");
    const std::string cfg = write_config(dir, R"({
      "curve": {"kind": "circle"},
      "method": "exact-disk",
      "vorticity": [{"center": [1.005, 0.0], "strength": 1.0, "core_radius": 0.001}],
      "dynamics": {"t_end": 0.1, "h": 0.001}
    })");
    CliResult r = run_cli("--config " + cfg + " --out " + dir.string() + " dynamics", dir);
    REQUIRE(r.code == 3);
    REQUIRE(contains(r.err, "solver error"));
}

TEST_CASE("a missing output directory exits with the io code") {
    const fs::path dir = fresh_dir("missing_out");
    const std::string cfg = write_config(dir, R"({"curve": {"kind": "circle"}})");
    CliResult r =
        run_cli("--config " + cfg + " --out " + (dir / "does_not_exist").string() + " geom", dir);
    REQUIRE(r.code == 4);
    REQUIRE(contains(r.err, "io error"));
}

TEST_CASE("identical runs produce byte-identical outputs") {
    const fs::path dir1 = fresh_dir("rerun_a");
    const fs::path dir2 = fresh_dir("rerun_b");
    const std::string text = R"({
      "curve": {"kind": "circle"},
      "mesh": {"N": 24, "amplitude": 1.0, "kappa": 2, "seed": 7},
      "gamma": 0.5,
      "method": "vortex",
      "vorticity": [{"center": [2.0, 0.5], "strength": 1.0, "core_radius": 0.05}],
      "eval_circle": {"radius": 3.0, "count": 7}
    })";
    const std::string cfg1 = write_config(dir1, text);
    const std::string cfg2 = write_config(dir2, text);

    REQUIRE(run_cli("--config " + cfg1 + " --out " + dir1.string() + " static", dir1).code == 0);
    REQUIRE(run_cli("--config " + cfg2 + " --out " + dir2.string() + " static", dir2).code == 0);
    for (const char* name : {"density.csv", "field.csv", "summary.json"})
        REQUIRE(bvm::io::read_text_file((dir1 / name).string()) ==
                bvm::io::read_text_file((dir2 / name).string()));
}

TEST_CASE("the seed flag replaces the configured mesh seed") {
    const std::string text = R"({
      "curve": {"kind": "circle"},
      "mesh": {"N": 24, "amplitude": 1.0, "kappa": 2, "seed": 7},
      "method": "vortex",
      "vorticity": [{"center": [2.0, 0.0], "strength": 1.0, "core_radius": 0.05}],
      "eval_circle": {"radius": 3.0, "count": 4}
    })";
    const fs::path base = fresh_dir("seed_base");
    const fs::path same = fresh_dir("seed_same");
    const fs::path other = fresh_dir("seed_other");
    const std::string cfg_base = write_config(base, text);
    const std::string cfg_same = write_config(same, text);
    const std::string cfg_other = write_config(other, text);

    REQUIRE(run_cli("--config " + cfg_base + " --out " + base.string() + " static", base).code == 0);
    REQUIRE(run_cli("--config " + cfg_same + " --out " + same.string() + " --seed 7 static", same)
                .code == 0);
    REQUIRE(
        run_cli("--config " + cfg_other + " --out " + other.string() + " --seed 9 static", other)
            .code == 0);

    const std::string rows_base = bvm::io::read_text_file((base / "density.csv").string());
    REQUIRE(rows_base == bvm::io::read_text_file((same / "density.csv").string()));
    REQUIRE(rows_base != bvm::io::read_text_file((other / "density.csv").string()));
}

TEST_CASE("geom writes the sampled boundary table and the radii report") {
    const fs::path dir = fresh_dir("geom");
    const std::string cfg = write_config(dir, R"({"curve": {"kind": "circle", "radius": 2.5}})");
    CliResult r = run_cli("--config " + cfg + " --out " + dir.string() + " geom", dir);
    INFO(r.err);
    REQUIRE(r.code == 0);

    const std::string table = bvm::io::read_text_file((dir / "geometry.csv").string());
    REQUIRE(lines_of(table).size() == 257);
    REQUIRE(lines_of(table)[0] == "s,x,y,tau_x,tau_y,n_x,n_y,curvature");

    const std::string summary = bvm::io::read_text_file((dir / "summary.json").string());
    REQUIRE(contains(summary, "\"kind\": \"circle\""));
    REQUIRE(contains(summary, "\"condition_2\": true"));
    REQUIRE(contains(summary, "\"condition_4\": true"));
    REQUIRE(contains(summary, "\"samples\": 256"));
}

TEST_CASE("diagnose reports what each mesh flavor can measure") {
    const fs::path dir = fresh_dir("diagnose");
    const std::string cfg = write_config(dir, R"({
      "curve": {"kind": "circle"}, "mesh": {"N": 32}, "method": "vortex"
    })");
    CliResult r = run_cli("--config " + cfg + " --out " + dir.string() + " diagnose", dir);
    INFO(r.err);
    REQUIRE(r.code == 0);
    const std::string vortex_report = bvm::io::read_text_file((dir / "diagnostics.json").string());
    REQUIRE(contains(vortex_report, "\"flavor\": \"vortex\""));
    REQUIRE(contains(vortex_report, "\"dominance_min_margin\": null"));
    REQUIRE(contains(vortex_report, "charge flavor"));
    REQUIRE_FALSE(contains(vortex_report, "\"pb_residual\": null"));
    REQUIRE(contains(vortex_report, "\"rho_full\":"));

    const fs::path dir2 = fresh_dir("diagnose_charge");
    const std::string cfg2 = write_config(dir2, R"({
      "curve": {"kind": "circle"}, "mesh": {"N": 32}, "method": "charge"
    })");
    CliResult r2 = run_cli("--config " + cfg2 + " --out " + dir2.string() + " diagnose", dir2);
    INFO(r2.err);
    REQUIRE(r2.code == 0);
    const std::string charge_report =
        bvm::io::read_text_file((dir2 / "diagnostics.json").string());
    REQUIRE(contains(charge_report, "\"flavor\": \"charge\""));
    REQUIRE(contains(charge_report, "\"pb_residual\": null"));
    REQUIRE_FALSE(contains(charge_report, "\"dominance_min_margin\": null"));
    REQUIRE(contains(charge_report, "vortex flavor"));
}

TEST_CASE("converge sweeps the mesh sizes against the exact disk field") {
    const fs::path dir = fresh_dir("converge");
    const std::string cfg = write_config(dir, R"({
      "curve": {"kind": "circle"},
      "mesh": {"N": 16},
      "method": "vortex",
      "vorticity": [{"center": [2.0, 0.0], "strength": 1.0, "core_radius": 0.05}],
      "n_list": [16, 32, 64],
      "eval_circle": {"radius": 3.0, "count": 8}
    })");
    CliResult r = run_cli("--config " + cfg + " --out " + dir.string() + " converge", dir);
    INFO(r.err);
    REQUIRE(r.code == 0);

    const std::string table = bvm::io::read_text_file((dir / "converge.csv").string());
    const std::vector<std::string> rows = lines_of(table);
    REQUIRE(rows.size() == 4);
    REQUIRE(rows[0] == "N,sup_error,slope_so_far");
    // uniform meshes on the disk resolve the image field to spectral accuracy
    const std::vector<double> errors = csv_column(table, 1);
    REQUIRE(errors[0] > errors[1]);
    REQUIRE(errors[1] > errors[2]);
    REQUIRE(errors[2] < 1e-8);
}

TEST_CASE("dynamics writes the trajectory table and conservation diagnostics") {
    const fs::path dir = fresh_dir("dynamics_free");
    const std::string cfg = write_config(dir, R"({
      "curve": {"kind": "circle"},
      "method": "free",
      "vorticity": [
        {"center": [2.0, 0.0], "strength": 12.566370614359172, "core_radius": 0.05},
        {"center": [-2.0, 0.0], "strength": 12.566370614359172, "core_radius": 0.05}
      ],
      "dynamics": {"t_end": 1.0, "h": 0.01, "output_every": 10}
    })");
    CliResult r = run_cli("--config " + cfg + " --out " + dir.string() + " dynamics", dir);
    INFO(r.err);
    REQUIRE(r.code == 0);

    const std::string traj = bvm::io::read_text_file((dir / "traj.csv").string());
    const std::vector<std::string> rows = lines_of(traj);
    REQUIRE(rows[0] == "t,blob_index,x,y");
    REQUIRE(rows.size() == 1 + 2 * 11); // 11 snapshots, two blobs each

    const std::string diag = bvm::io::read_text_file((dir / "diagnostics.json").string());
    REQUIRE(contains(diag, "\"snapshots\": 11"));
    REQUIRE(contains(diag, "\"min_boundary_dist\": null"));
    REQUIRE(contains(diag, "\"total_circulation\": 25.132741228718345"));
    REQUIRE(contains(diag, "\"method\": \"free\""));
}
