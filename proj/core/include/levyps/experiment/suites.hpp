#pragma once

#include "levyps/experiment/config.hpp"
#include "levyps/experiment/report.hpp"

namespace levyps::experiment {

// Runs the selected suites in a fixed order.  Identical configs give
// identical records and artifacts whatever the thread count.
Report run(const ExperimentConfig& config);

void run_charfn(const ExperimentConfig& config, Report& report);
void run_units(const ExperimentConfig& config, Report& report);
void run_skellam(const ExperimentConfig& config, Report& report);
void run_hermite(const ExperimentConfig& config, Report& report);
void run_density(const ExperimentConfig& config, Report& report);
void run_orthogonality(const ExperimentConfig& config, Report& report);
void run_discriminate(const ExperimentConfig& config, Report& report);

}  // namespace levyps::experiment
