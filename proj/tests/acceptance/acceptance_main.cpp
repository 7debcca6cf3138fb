#include <cstdio>
#include <exception>
#include <fstream>
#include <vector>

#include "CLI11.hpp"
#include "scwig/validation.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria runner"};
  std::vector<int> criteria;
  std::string report;
  app.add_option("--criterion,-c", criteria, "criterion number(s) to run; default all")
      ->check(CLI::Range(1, scwig::criterion_count));
  app.add_option("--report", report, "write the full JSON tables to this file");
  CLI11_PARSE(app, argc, argv);
  if (criteria.empty())
    for (int i = 1; i <= scwig::criterion_count; ++i) criteria.push_back(i);

  bool all = true;
  nlohmann::json out = nlohmann::json::array();
  for (int id : criteria) {
    try {
      const scwig::CriterionResult r = scwig::run_criterion(id);
      std::printf("%s\n", r.line().c_str());
      std::fflush(stdout);
      all = all && r.pass;
      out.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"measured", r.measured},
                     {"target", r.target}, {"tolerance", r.tolerance}, {"detail", r.detail},
                     {"seconds", r.seconds}, {"data", r.data}});
    } catch (const std::exception& e) {
      std::printf("AC%d FAIL  error: %s\n", id, e.what());
      all = false;
    }
  }
  if (!report.empty()) std::ofstream(report) << out.dump(2) << '\n';
  return all ? 0 : 1;
}
