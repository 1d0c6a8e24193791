#ifndef ESPEED_MODEL_HPP
#define ESPEED_MODEL_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace espeed {

// Raised for domain failures: bad inputs to an algorithm, unmet
// preconditions, numerical breakdown.
class Error : public std::runtime_error {
      public:
        using std::runtime_error::runtime_error;
};

using JobId = int;
using ProcId = int;

// Exponent of the power function: a processor running at speed s draws s^alpha.
struct Alpha {
        double value{3.0};
};

struct RigidSize {
        int size{1};
};

struct MoldableCap {
        int delta{1};
};

// Sorted, duplicate-free set of processor ids.
struct DedicatedSet {
        std::vector<ProcId> fix;
};

using Demand = std::variant<RigidSize, MoldableCap, DedicatedSet>;

enum class JobKind { Rigid, Moldable, Dedicated };

struct Job {
        JobId id{0};
        double total_work{1.0};  // V_j; per-processor work is always V_j / m_j
        Demand demand{RigidSize{}};

        [[nodiscard]] JobKind kind() const;
        // Processor count of a dedicated job, size of a rigid job, cap of a moldable job.
        [[nodiscard]] int demand_count() const;
};

struct Instance {
        int m{1};
        double energy{1.0};
        Alpha alpha{};
        JobKind kind{JobKind::Rigid};
        std::vector<Job> jobs;

        [[nodiscard]] std::size_t n() const { return jobs.size(); }
        // Throws Error for an unknown id.
        [[nodiscard]] const Job& job(JobId id) const;
        [[nodiscard]] std::map<JobId, std::size_t> index() const;
};

struct Violation {
        std::string field;
        std::optional<JobId> job;
        std::string message;
};

struct ValidationVerdict {
        std::vector<Violation> violations;
        [[nodiscard]] bool ok() const { return violations.empty(); }
        [[nodiscard]] std::string summary() const;
};

ValidationVerdict validate_instance(const Instance& inst);
// Throws Error carrying the first violation when the instance is invalid.
void require_valid(const Instance& inst);

struct Piece {
        JobId job{0};
        std::vector<ProcId> procs;  // sorted
        double start{0.0};
        double end{0.0};
        double speed{1.0};

        [[nodiscard]] double length() const { return end - start; }
};

struct Schedule {
        std::vector<Piece> pieces;
};

// Per-job quantities derived from a schedule's pieces.
struct JobStats {
        int width{0};            // m_j
        double duration{0.0};    // p_j, sum of piece lengths
        double completion{0.0};  // C_j, latest piece end
        double first_start{0.0};
        std::size_t piece_count{0};
};

std::map<JobId, JobStats> job_stats(const Schedule& sched);

// Sum over jobs of m_j * W_j^alpha * p_j^(1-alpha), W_j = V_j / m_j.
// Throws Error if a job of the instance has no pieces.
double energy_of(const Schedule& sched, const Instance& inst);

// Sum over pieces of |procs| * speed^alpha * length.
double integrated_energy(const Schedule& sched, Alpha alpha);

double total_completion(const Schedule& sched);

const char* to_string(JobKind kind);
JobKind kind_from_string(const std::string& name);

}  // namespace espeed

#endif
