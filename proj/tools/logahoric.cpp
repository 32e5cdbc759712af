// logahoric <command> --config FILE [--out FILE] [--csv FILE]
//
// Exit codes: 0 ok, 1 domain error (structured error in the report),
// 2 unparseable config or command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "logahoric/report.hpp"

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out.flush());
}

}  // namespace

int main(int argc, char** argv) {
  using namespace logahoric;
  CLI::App app{"Parahoric data and logahoric Hitchin systems on P^1, in exact arithmetic"};
  std::string command, config_path, out_path, csv_path;
  app.add_option("command", command, "parahoric-analyze | gaudin | hitchin | spectral | moment | involution | "
                                     "diagram-check | stability | leaf")
      ->required();
  app.add_option("--config", config_path, "JSON experiment config")->required();
  app.add_option("--out", out_path, "write the JSON report here instead of stdout");
  app.add_option("--csv", csv_path, "spectral: write the z,disc sample table here");
  app.set_version_flag("--version", io::kToolVersion);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::ifstream in(config_path, std::ios::binary);
  std::string text;
  if (in) {
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  io::Outcome o = in ? io::execute(command, text) : io::Outcome{};
  if (!in) {
    o.exit_code = 2;
    o.report = {{"command", command},
                {"tool_version", io::kToolVersion},
                {"status", "error"},
                {"error", {{"kind", "parse"}, {"message", "cannot read config file '" + config_path + "'"}}}};
  }

  if (o.exit_code == 0) {
    std::string csv = csv_path;
    if (csv.empty() && o.output.has_csv && o.output.results.is_object()) {
      // a config may also name the CSV destination
      std::ifstream again(config_path);
      const auto j = nlohmann::json::parse(again, nullptr, false);
      if (j.is_object() && j.contains("options") && j["options"].is_object() && j["options"].contains("emit_csv") &&
          j["options"]["emit_csv"].is_string())
        csv = j["options"]["emit_csv"].get<std::string>();
    }
    if (!csv.empty()) {
      if (!o.output.has_csv) {
        o.exit_code = 2;
        o.report["status"] = "error";
        o.report["error"] = {{"kind", "parse"}, {"message", "--csv is only supported by the spectral command"}};
      } else if (!write_file(csv, io::csv_text(o.output.csv_rows))) {
        o.exit_code = 1;
        o.report["status"] = "error";
        o.report["error"] = {{"kind", "io"}, {"message", "cannot write CSV file '" + csv + "'"}};
      }
    }
  }

  const std::string body = o.report.dump(2) + "\n";
  if (!out_path.empty()) {
    if (!write_file(out_path, body)) {
      std::cerr << "logahoric: cannot write report to '" << out_path << "'\n";
      std::cout << body;
      return 1;
    }
  } else {
    std::cout << body;
  }
  if (o.exit_code != 0) std::cerr << "logahoric: " << o.report["error"]["message"].get<std::string>() << "\n";
  return o.exit_code;
}
