#ifndef CAC_ALLOC_HPP
#define CAC_ALLOC_HPP

#include <optional>
#include <vector>

#include "cac/model.hpp"

// Live bandwidth allocation and the call admission decision.
//
// A cell's state is the per-class call census plus the per-call allocation
// currently granted to each class. Allocation is a pure function of the
// census (recomputed on every admission and departure), so state transitions
// are fully deterministic: state in, state out.

namespace cac {

enum class CallKind { New, Handover };

// Scope of the new-call floor rule ("reject a new call while some class sits
// at/below its new-call floor"). AnyClass is the default reading; the
// arriving-class alternative is switchable for comparison runs.
enum class NewCallFloorRule { AnyClass, ArrivingClass };

struct CellState {
    std::vector<int> counts;    // active calls per class (N_m)
    std::vector<double> alloc;  // per-call allocated bandwidth per class; beta_r where counts==0
};

struct AdmitOutcome {
    bool accepted = false;
    std::optional<CellState> new_state;  // present only when accepted
    double granted = 0.0;                // per-call bandwidth of the admitted call's class
};

// State with no calls; every class rests at its requested bandwidth.
CellState empty_state(const SystemParams& params);

// Per-class allocation for an arbitrary (possibly fractional) census:
// real-time classes at beta_r; non-real-time classes at beta_r when the
// residual capacity covers every request, otherwise shared proportionally to
// (1-gamma_h)*beta_r with each class capped at beta_r and the excess
// redistributed among the uncapped classes. Throws InfeasibleStateError when
// the census does not fit even with every class at its handover floor.
std::vector<double> allocation_for_census(const std::vector<double>& census,
                                          const SystemParams& params);

// Residual fractional non-real-time capacity X. Requires at least one active
// non-real-time call; throws UndefinedResidualError otherwise.
double residual_fraction(const CellState& state, const SystemParams& params);

// Recomputes every class's allocation from the census.
CellState reallocate(const CellState& state, const SystemParams& params);

// Total bandwidth the non-real-time calls could give up for an arriving call
// of the given kind, clamped at zero per class.
double releasable_bandwidth(const CellState& state, const SystemParams& params, CallKind kind);

// Bandwidth held by all active calls.
double occupied_bandwidth(const CellState& state);

// Capacity left if every non-real-time call dropped to its floor for the
// given kind. Negative values mean some call already sits below the new-call
// floor and nothing more fits.
double available_bandwidth(const CellState& state, const SystemParams& params, CallKind kind);

// Minimum bandwidth that must be found to admit one more call of the class.
double required_bandwidth(const TrafficClass& cls, CallKind kind);

// The admission decision: floor rule for new calls, fast path when the full
// request fits untouched, otherwise the required-vs-available test followed
// by a whole-cell reallocation. Rejection is a normal outcome.
AdmitOutcome admit(const CellState& state, const SystemParams& params,
                   std::size_t class_index, CallKind kind,
                   NewCallFloorRule rule = NewCallFloorRule::AnyClass);

// Departure of one call of the class, with reallocation.
CellState remove_call(const CellState& state, const SystemParams& params, std::size_t class_index);

// Throws InternalError if the state violates conservation or a floor.
void check_state(const CellState& state, const SystemParams& params);

}  // namespace cac

#endif
