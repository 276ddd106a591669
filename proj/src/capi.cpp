#include "photoncount/photoncount.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "photoncount/commands.hpp"

struct pcs_run {
  std::string command;
  std::string config_json;
  std::optional<std::uint64_t> seed_override;
  pcs_status status = PCS_OK;
  std::string error;
  std::string summary;
};

namespace {

pcs_status status_for(const std::exception& e) {
  if (dynamic_cast<const pcs::ConfigError*>(&e)) return PCS_ERR_CONFIG;
  if (dynamic_cast<const pcs::TruncationError*>(&e)) return PCS_ERR_CONFIG;
  if (dynamic_cast<const pcs::ConditioningError*>(&e)) return PCS_ERR_CONFIG;
  if (dynamic_cast<const pcs::NumericError*>(&e)) return PCS_ERR_NUMERIC;
  if (dynamic_cast<const pcs::StatError*>(&e)) return PCS_ERR_STAT;
  return PCS_ERR_INTERNAL;
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw pcs::ConfigError("cannot open output file " + path.string());
  }
  out << data;
}

}  // namespace

extern "C" {

const char* pcs_version(void) { return pcs::version_string(); }

pcs_run* pcs_run_new(const char* command, const char* config_json) {
  auto* run = new pcs_run;
  run->command = command ? command : "";
  run->config_json = config_json ? config_json : "";
  if (run->command.empty()) {
    run->status = PCS_ERR_CONFIG;
    run->error = "command must not be empty";
    return run;
  }
  try {
    pcs::SimConfig::from_json_text(run->config_json);
  } catch (const std::exception& e) {
    run->status = PCS_ERR_CONFIG;
    run->error = e.what();
  }
  return run;
}

void pcs_run_set_seed(pcs_run* run, uint64_t seed) {
  if (run) run->seed_override = seed;
}

pcs_status pcs_run_execute(pcs_run* run, const char* out_dir) {
  if (!run) return PCS_ERR_INTERNAL;
  if (run->status != PCS_OK) return run->status;
  try {
    pcs::SimConfig cfg = pcs::SimConfig::from_json_text(run->config_json);
    if (run->seed_override) cfg.seed = *run->seed_override;
    pcs::ResultBundle bundle = pcs::run_command(run->command, cfg);
    run->summary = bundle.summary_json;
    if (out_dir && *out_dir) {
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      write_file(dir / "summary.json", bundle.summary_json);
      for (const auto& [name, data] : bundle.files) {
        write_file(dir / name, data);
      }
    }
    run->status = static_cast<pcs_status>(bundle.status);
  } catch (const std::exception& e) {
    run->status = status_for(e);
    run->error = e.what();
  }
  return run->status;
}

pcs_status pcs_run_status(const pcs_run* run) {
  return run ? run->status : PCS_ERR_INTERNAL;
}

const char* pcs_run_error(const pcs_run* run) {
  return run ? run->error.c_str() : "";
}

const char* pcs_run_summary(const pcs_run* run) {
  return run ? run->summary.c_str() : "";
}

void pcs_run_free(pcs_run* run) { delete run; }

pcs_status pcs_config_validate(const char* config_json, char* errbuf,
                               unsigned long errbuf_len) {
  try {
    pcs::SimConfig::from_json_text(config_json ? config_json : "");
    if (errbuf && errbuf_len > 0) errbuf[0] = '\0';
    return PCS_OK;
  } catch (const std::exception& e) {
    if (errbuf && errbuf_len > 0) {
      std::strncpy(errbuf, e.what(), errbuf_len - 1);
      errbuf[errbuf_len - 1] = '\0';
    }
    return PCS_ERR_CONFIG;
  }
}

}  // extern "C"
