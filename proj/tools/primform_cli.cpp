// primform-cli: runs one job document and prints the result document.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "primform/errors.hpp"
#include "primform/job.hpp"

using namespace primform;

namespace {

Json error_doc(const std::string& command, const std::string& code, const std::string& module, const std::string& msg) {
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = command;
  doc["error"] = {{"code", code}, {"module", module}, {"message", msg}};
  return doc;
}

std::string read_all(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidJob, "cli", "cannot open job file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> parse_mask(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidJob, "cli", "bad mask entry '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taylor expansions of primitive forms for weighted homogeneous singularities"};
  std::string job_path, command, mask;
  int order = -1;
  std::vector<std::string> set_c;
  bool no_prune = false;
  app.add_option("--job", job_path, "job document (JSON), '-' for stdin")->required();
  app.add_option("--command", command, "analyze | moduli | primitive-form | pairing | verify");
  app.add_option("--order", order, "truncation order N");
  app.add_option("--set-c", set_c, "opposite parameter i,j=p/q (repeatable)");
  app.add_option("--mask", mask, "deformation directions j1,j2,... (1-based)");
  app.add_flag("--no-prune", no_prune, "disable weighted-degree pruning");
  app.get_option("--set-c")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  CLI11_PARSE(app, argc, argv);

  Json doc;
  try {
    Json raw;
    try {
      raw = Json::parse(read_all(job_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::InvalidJob, "cli", std::string("job is not valid JSON: ") + e.what());
    }
    JobSpec job = JobSpec::from_json(raw);
    if (!command.empty()) job.command = command;
    if (order >= 0) job.order = order;
    if (!mask.empty()) job.mask = parse_mask(mask);
    if (no_prune) job.prune = false;
    for (const auto& item : set_c) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::InvalidJob, "cli", "--set-c expects i,j=p/q");
      job.c[parse_index_pair(item.substr(0, eq))] = Rat::parse(item.substr(eq + 1));
    }
    doc = run(JobSpec::from_json(job.to_json()));
  } catch (const Error& e) {
    doc = error_doc(command, std::string(to_string(e.code())), e.module(), e.what());
  }
  std::cout << doc.dump(2) << "\n";
  if (doc.contains("error")) {
    std::cerr << "primform-cli: " << doc["error"]["code"].get<std::string>() << ": "
              << doc["error"]["message"].get<std::string>() << "\n";
    return 1;
  }
  return 0;
}
