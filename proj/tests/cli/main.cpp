// End-to-end driver for the command-line tool. Spawns the real binary, checks
// exit codes and the files it leaves behind. Usage:
//
//   topicbench_cli_tests <path-to-tool> <scratch-dir>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_tool;
fs::path g_scratch;
int g_failures = 0;

void check(bool ok, const std::string& what) {
    if (ok) {
        std::printf("ok: %s\n", what.c_str());
    } else {
        std::printf("FAILED: %s\n", what.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Runs the tool with the given arguments; stdout+stderr go to a capture file.
int run(const std::string& args, std::string* output = nullptr) {
    const fs::path capture = g_scratch / "capture.log";
    const std::string command =
        g_tool + " " + args + " > " + capture.string() + " 2>&1";
    const int status = std::system(command.c_str());
    if (output != nullptr) *output = read_file(capture);
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string q(const fs::path& p) { return p.string(); }

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: %s <tool> <scratch-dir>\n", argv[0]);
        return 2;
    }
    g_tool = argv[1];
    g_scratch = argv[2];
    std::error_code ec;
    fs::remove_all(g_scratch, ec);
    fs::create_directories(g_scratch);

    std::string output;

    // --- basic invocation behaviour -------------------------------------
    check(run("--help", &output) == 0, "--help exits zero");
    check(output.find("ingest") != std::string::npos &&
              output.find("synth") != std::string::npos,
          "--help lists the subcommands");
    check(run("--version", &output) == 0, "--version exits zero");
    check(run("", &output) == 1, "no subcommand is a usage error");
    check(run("features --no-such-flag", &output) == 1, "unknown flag exits one");
    check(run("ingest --messages " + q(g_scratch / "absent.jsonl") + " --followers " +
                  q(g_scratch / "absent.tsv") + " --out " + q(g_scratch / "r.json"),
              &output) == 1,
          "missing input file exits one");
    {
        std::ofstream garbage(g_scratch / "garbage.csv");
        garbage << "this is not a matrix\n";
    }
    check(run("train --matrix " + q(g_scratch / "garbage.csv") + " --labels " +
                  q(g_scratch / "garbage.csv") + " --out " + q(g_scratch / "m.txt"),
              &output) == 1,
          "malformed input exits one");
    check(output.find("error:") != std::string::npos, "input failures are prefixed with error:");

    // --- synthetic corpus ------------------------------------------------
    const fs::path synth_dir = g_scratch / "synth";
    const std::string synth_flags =
        "synth --seed 404 --users 220 --topics 30 --buckets 6 --seeds-per-topic 3 --out-dir ";
    check(run(synth_flags + q(synth_dir), &output) == 0, "synth exits zero");
    check(fs::exists(synth_dir / "messages.jsonl") && fs::exists(synth_dir / "followers.tsv") &&
              fs::exists(synth_dir / "ledger.json") && fs::exists(synth_dir / "manifest.json"),
          "synth writes corpus, followers, ledger and manifest");

    const fs::path synth_again = g_scratch / "synth_again";
    check(run(synth_flags + q(synth_again), &output) == 0, "second synth run exits zero");
    check(read_file(synth_dir / "messages.jsonl") == read_file(synth_again / "messages.jsonl") &&
              read_file(synth_dir / "followers.tsv") ==
                  read_file(synth_again / "followers.tsv") &&
              read_file(synth_dir / "ledger.json") == read_file(synth_again / "ledger.json"),
          "identical seeds give byte-identical synth output");

    const std::string corpus_flags = " --messages " + q(synth_dir / "messages.jsonl") +
                                     " --followers " + q(synth_dir / "followers.tsv");

    // --- ingest ----------------------------------------------------------
    const fs::path report_path = g_scratch / "ingest_report.json";
    check(run("ingest" + corpus_flags + " --out " + q(report_path), &output) == 0,
          "ingest exits zero");
    const std::string report = read_file(report_path);
    check(report.find("\"messages_ok\"") != std::string::npos &&
              report.find("\"reject_reasons\"") != std::string::npos,
          "ingest report carries counters");
    check(fs::exists(g_scratch / "ingest_report.json.manifest.json"),
          "ingest writes a run manifest");

    // --- features / label / train / eval ---------------------------------
    const fs::path matrix_path = g_scratch / "matrix.csv";
    check(run("features" + corpus_flags + " --bucket 4 --window 3 --min-count 3 --seed 7" +
                  " --lda-fit-iterations 30 --lda-infer-iterations 10 --workers 1 --out " +
                  q(matrix_path),
              &output) == 0,
          "features exits zero");
    const std::string matrix_csv = read_file(matrix_path);
    check(matrix_csv.rfind("topic,bucket,", 0) == 0, "feature matrix starts with its header");

    const fs::path labels_path = g_scratch / "labels.csv";
    check(run("label" + corpus_flags + " --bucket 4 --min-count 3 --threshold 1 --out " +
                  q(labels_path),
              &output) == 0,
          "label exits zero");
    check(read_file(labels_path).rfind("topic,label\n", 0) == 0,
          "labels file starts with its header");

    const fs::path model_path = g_scratch / "model.txt";
    check(run("train --matrix " + q(matrix_path) + " --labels " + q(labels_path) +
                  " --folds 4 --seed 1 --iterations 200 --out " + q(model_path),
              &output) == 0,
          "train exits zero");
    check(output.find("macro_f1") != std::string::npos, "train prints pooled metrics");
    check(fs::exists(model_path), "train writes the model artifact");

    const fs::path predictions_path = g_scratch / "predictions.csv";
    check(run("eval --matrix " + q(matrix_path) + " --labels " + q(labels_path) + " --model " +
                  q(model_path) + " --out " + q(predictions_path),
              &output) == 0,
          "eval exits zero");
    check(read_file(predictions_path).rfind("topic,score,label,truth\n", 0) == 0,
          "predictions file starts with its header");
    check(output.find("macro_f1") != std::string::npos &&
              output.find("rmse") != std::string::npos,
          "eval prints the three indexes");

    // A model trained on a different layout must be rejected.
    const fs::path latent_matrix_path = g_scratch / "latent_matrix.csv";
    check(run("features" + corpus_flags + " --bucket 4 --window 3 --min-count 3 --latent --out " +
                  q(latent_matrix_path),
              &output) == 0,
          "latent features exit zero");
    check(run("eval --matrix " + q(latent_matrix_path) + " --labels " + q(labels_path) +
                  " --model " + q(model_path) + " --out " + q(g_scratch / "bad.csv"),
              &output) == 1,
          "schema mismatch exits one");
    check(output.find("schema hash mismatch") != std::string::npos,
          "schema mismatch names the problem");

    // --- ablate on the small latent matrix -------------------------------
    const fs::path ablation_path = g_scratch / "ablation.csv";
    check(run("ablate --matrix " + q(latent_matrix_path) + " --labels " + q(labels_path) +
                  " --folds 4 --iterations 150 --out " + q(ablation_path),
              &output) == 0,
          "ablate exits zero");
    check(read_file(ablation_path).find("rank,unit,ablated_score,relative_contribution") !=
              std::string::npos,
          "ablation report has the ranked header");

    // --- rank + repro-tables ---------------------------------------------
    const fs::path tables_dir = g_scratch / "tables";
    check(run("repro-tables --out-dir " + q(tables_dir), &output) == 0,
          "repro-tables exits zero");
    check(output.find("self-check") != std::string::npos, "repro-tables reports its self-check");
    check(fs::exists(tables_dir / "published_scorecards.csv") &&
              fs::exists(tables_dir / "weights.csv") && fs::exists(tables_dir / "ranking.csv"),
          "repro-tables writes the three tables");

    const fs::path ranking_path = g_scratch / "ranking.csv";
    check(run("rank --scorecards " + q(tables_dir / "published_scorecards.csv") +
                  " --scenario I --out " + q(ranking_path),
              &output) == 0,
          "rank exits zero");
    const std::string ranking_csv = read_file(ranking_path);
    check(ranking_csv.find("F-I (7 Day)") != std::string::npos &&
              ranking_csv.find("0.1848") != std::string::npos,
          "scenario I ranking reproduces the published winner and distance");

    check(run("rank --scorecards " + q(tables_dir / "published_scorecards.csv") +
                  " --weights 0.2,0.2,0.2,0.2,0.2 --out " + q(g_scratch / "uniform.csv"),
              &output) == 0,
          "rank with explicit weights exits zero");
    check(read_file(g_scratch / "uniform.csv").find("F-I (7 Day)") != std::string::npos,
          "uniform weights still rank the seven methods");

    // A risk-matrix file drives the same machinery as the built-in scenarios.
    {
        std::ofstream rm(g_scratch / "risk.csv");
        rm << "# metric,likelihood,severity\n"
           << "complexity,likely,marginal\n"
           << "universality,possible,critical\n"
           << "macro_f1,possible,critical\n"
           << "micro_f1,possible,critical\n"
           << "rmse,possible,critical\n";
    }
    check(run("rank --scorecards " + q(tables_dir / "published_scorecards.csv") +
                  " --risk-matrix " + q(g_scratch / "risk.csv") + " --out " +
                  q(g_scratch / "custom.csv"),
              &output) == 0,
          "rank with a risk-matrix file exits zero");
    const std::string custom_csv = read_file(g_scratch / "custom.csv");
    check(custom_csv.find("rank,method,min_dis") != std::string::npos,
          "custom ranking has the csv header");

    // --- config file precedence ------------------------------------------
    {
        std::ofstream cfg(g_scratch / "tool.ini");
        cfg << "[synth]\nseed=5\nusers=150\ntopics=10\nbuckets=4\n";
    }
    const fs::path cfg_dir = g_scratch / "synth_cfg";
    check(run("--config " + q(g_scratch / "tool.ini") + " synth --out-dir " + q(cfg_dir),
              &output) == 0,
          "synth driven by a config file exits zero");
    const std::string cfg_manifest = read_file(cfg_dir / "manifest.json");
    check(cfg_manifest.find("\"users\": \"150\"") != std::string::npos,
          "config file values land in the manifest");

    const fs::path flag_dir = g_scratch / "synth_flag";
    check(run("--config " + q(g_scratch / "tool.ini") + " synth --users 170 --out-dir " +
                  q(flag_dir),
              &output) == 0,
          "flags alongside a config file exit zero");
    check(read_file(flag_dir / "manifest.json").find("\"users\": \"170\"") != std::string::npos,
          "command-line flags override the config file");

    // ----------------------------------------------------------------------
    if (g_failures > 0) {
        std::printf("%d check(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all cli checks passed\n");
    return 0;
}
