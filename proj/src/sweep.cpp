#include "meshplan/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "meshplan/error.hpp"

namespace meshplan {

namespace {

struct Job {
  Scenario scenario;
  Protocol protocol;
};

std::vector<RunRecord> run_jobs(const std::vector<Job>& jobs) {
  std::vector<RunRecord> out(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const Job& job = jobs[i];
        Bundle b = run_pipeline(job.scenario, job.protocol);
        out[i] = RunRecord{b.channels, b.horizon_s, b.protocol, b.seed, std::move(b.metrics)};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, jobs.size()));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

std::vector<RunRecord> sweep_channels(const Scenario& scenario, const std::vector<int>& channel_counts,
                                      const std::vector<Protocol>& protocols, const std::vector<std::uint64_t>& seeds) {
  std::vector<Job> jobs;
  for (int count : channel_counts) {
    if (count < 1) throw Error(ErrorKind::Validation, "channel counts must be >= 1");
    for (Protocol p : protocols) {
      for (std::uint64_t seed : seeds) {
        Job job{scenario, p};
        job.scenario.algorithm.n_channels = count;
        job.scenario.sim.seed = seed;
        jobs.push_back(std::move(job));
      }
    }
  }
  return run_jobs(jobs);
}

std::vector<RunRecord> sweep_time(const Scenario& scenario, const std::vector<double>& horizons,
                                  const std::vector<Protocol>& protocols, const std::vector<std::uint64_t>& seeds) {
  std::vector<Job> jobs;
  for (double h : horizons) {
    if (!(h > 0.0)) throw Error(ErrorKind::Validation, "horizons must be positive");
    for (Protocol p : protocols) {
      for (std::uint64_t seed : seeds) {
        Job job{scenario, p};
        job.scenario.sim.horizon_s = h;
        job.scenario.sim.seed = seed;
        jobs.push_back(std::move(job));
      }
    }
  }
  return run_jobs(jobs);
}

}  // namespace meshplan
