#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "relicpress/payload.hpp"
#include "relicpress/qr.hpp"
#include "relicpress/strategy.hpp"

namespace relicpress::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kUsage = 2,
    kBudget = 3,
};

struct RunConfig {
    std::filesystem::path manifest_path;
    codec::Strategy strategy = codec::Strategy::Hybrid;
    qr::Ecc ecc = qr::Ecc::L;
    payload::PayloadMode mode = payload::PayloadMode::RawHtml;
    std::filesystem::path out_dir;
    std::optional<std::filesystem::path> corpus_dir;  // defaults to the manifest's directory
    std::optional<std::filesystem::path> stub_path;
    int module_px = 4;
    int quiet_zone = 4;
};

/// The five files singled out by the file-size analysis.
inline constexpr std::string_view kCriticalFiles[] = {
    "THE_LUNAR_LANDING.agc",
    "LUNAR_LANDING_GUIDANCE_EQUATIONS.agc",
    "BURN_BABY_BURN--MASTER_IGNITION_ROUTINE.agc",
    "P70-P71.agc",
    "ALARM_AND_ABORT.agc",
};

int cmd_analyze(const std::filesystem::path& corpus_dir, const std::optional<std::filesystem::path>& manifest,
                std::ostream& out, std::ostream& err);
int cmd_build(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);
int cmd_report(const std::filesystem::path& manifest, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relicpress::cli
