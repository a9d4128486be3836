#ifndef DPCOX_MOVE_VALIDITY_HPP
#define DPCOX_MOVE_VALIDITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dpcox/capture_game.hpp"
#include "dpcox/curve_graph.hpp"
#include "dpcox/exceptional_curves.hpp"
#include "dpcox/move_kind.hpp"

namespace dpcox {

struct NefBig {
  std::int64_t min_product = 0;
  std::int64_t n_squared = 0;
};

// N.H >= 0 for every exceptional H and N^2 > 0.
std::optional<NefBig> nef_big_check(const DivisorClass& n, const SurfaceModel& model);

struct SideConditions {
  bool hold = false;
  std::vector<std::string> facts;  // the checks that were made, in order
};

// Everything about D that move validation needs, computed once.
class MoveValidator {
 public:
  MoveValidator(const DivisorClass& d, const CurveGraph& g);

  const DivisorClass& divisor() const noexcept { return d_; }
  const CurveGraph& graph() const noexcept { return *g_; }
  std::int64_t m_d() const noexcept { return m_d_; }
  // D + K, set on X_7 when m_D = 1.
  const std::optional<DivisorClass>& residual() const noexcept { return f_; }
  const std::optional<ConicStructure>& conic() const noexcept { return conic_; }
  // F.C and min{F.E : E.C = 0}, set with residual().
  std::int64_t residual_product(int c) const { return f_prod_(c); }
  std::int64_t residual_min_disjoint(int c) const { return f_min_disjoint_(c); }

  // Throws ContractViolation if the move does not realize its kind's diagram.
  SideConditions side_conditions(const CaptureMove& m) const;
  bool side_conditions_hold(const CaptureMove& m) const;  // same verdict, no fact list
  // Nef-and-big test for N = D - anchors - captured - K, from cached products.
  // Two-anchor moves only.
  std::optional<NefBig> nef_big(const CaptureMove& m) const;
  std::optional<ValidityEvidence> validate(const CaptureMove& m) const;

  // Oracle over `kinds` backed by validate(). The validator must outlive it.
  MoveOracle oracle(std::vector<MoveKind> kinds) const;

 private:
  using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

  bool evaluate_side_conditions(const CaptureMove& m, std::vector<std::string>* facts) const;

  DivisorClass d_;
  const CurveGraph* g_;
  std::int64_t m_d_ = 0;
  std::int64_t d_squared_ = 0;
  std::int64_t degree_ = 0;
  IntVector d_prod_;
  std::optional<DivisorClass> f_;
  std::optional<ConicStructure> conic_;
  IntVector f_prod_;
  IntVector f_min_disjoint_;
};

std::optional<ValidityEvidence> validate_move(const DivisorClass& d, const CaptureMove& m, const CurveGraph& g);

// Nef classes with -K.D = degree, sorted.
std::vector<DivisorClass> enumerate_nef_classes(int rank, int degree, const SurfaceModel& model);

enum class Route { NOT_NEF, CONTRACTION, GAME };
std::string_view to_string(Route r);
Route parse_route(std::string_view text);

struct ContractionStep {
  int contracted = -1;                    // a curve with D.C = 0
  std::vector<DivisorClass> reflections;  // roots, applied in order, sending C to e_r
  std::optional<DivisorClass> restricted; // the image of D on X_{r-1}; absent at r = 2
};

struct VanishingCertificate {
  DivisorClass divisor;
  int rank = 0;
  Route route = Route::GAME;
  std::int64_t m_d = 0;
  int violating_curve = -1;  // NOT_NEF
  std::optional<ContractionStep> contraction;
  std::optional<CaptureCertificate> game;
};

struct CertifyOptions {
  bool allow_generic_moves = false;
};

struct GamePlan {
  VertexSet start;
  std::vector<MoveKind> kinds;
};

// Start pair and move kinds for a divisor with m_D >= 1.
GamePlan game_plan(const MoveValidator& v, const CertifyOptions& opts);

// Throws ContractViolation for -K.D < 3 and CertificationFailed if the
// closure stalls.
VanishingCertificate certify(const DivisorClass& d, const CurveGraph& g, const CertifyOptions& opts = {});

// Re-checks a certificate from scratch against D and the graph.
bool verify_certificate(const VanishingCertificate& cert, const CurveGraph& g, const CertifyOptions& opts = {});

// Every nef class with 3 <= -K.D <= max_degree, in (degree, class) order.
// `threads` <= 1 runs inline. Per-class wall times go to `seconds` if given.
std::vector<VanishingCertificate> sweep(int rank, int max_degree, const CurveGraph& g,
                                        const CertifyOptions& opts = {}, int threads = 1,
                                        std::vector<double>* seconds = nullptr);

// Every instance of a non-generic kind whose side conditions hold, checked
// against the conclusion it is supposed to imply: N nef and big for
// two-anchor moves, and for M5 that C is a fixed component of D - C'.
struct EvidenceCounterexample {
  DivisorClass divisor;
  CaptureMove move;
};

struct EvidenceSweepReport {
  int rank = 0;
  std::int64_t classes = 0;
  std::int64_t instances = 0;
  std::vector<std::int64_t> instances_by_kind;  // indexed by MoveKind
  std::vector<EvidenceCounterexample> counterexamples;
};

EvidenceSweepReport side_condition_sweep(const CurveGraph& g, int min_degree, int max_degree, int threads = 1);

std::vector<DivisorClass> nef_classes_up_to(int rank, int min_degree, int max_degree, const SurfaceModel& model);

// Every effective class with -K.D <= max_degree, sorted. A non-nef effective
// class is a curve plus an effective class of one lower degree.
std::vector<DivisorClass> effective_classes(int rank, int max_degree, const SurfaceModel& model);

}  // namespace dpcox

#endif  // DPCOX_MOVE_VALIDITY_HPP
