#pragma once

#include <string>

#include "oam/errors.hpp"

namespace oam {

/// The ordered orbital-angular-momentum basis l = -l_max ... +l_max.
///
/// Every state, projector and channel in this library is indexed by one of
/// these. Basis size is 2*l_max + 1 per photon; the qutrit case of interest
/// is l_max = 1 with l in {-1, 0, +1}.
class ModeSpectrum {
public:
    explicit ModeSpectrum(int l_max) : l_max_(l_max) {
        if (l_max < 1) {
            throw DomainError("ModeSpectrum: l_max must be >= 1, got " +
                              std::to_string(l_max));
        }
    }

    int l_max() const { return l_max_; }
    int size() const { return 2 * l_max_ + 1; }

    bool contains(int l) const { return l >= -l_max_ && l <= l_max_; }

    /// Storage index of winding number l (0-based, l = -l_max first).
    int index_of(int l) const {
        if (!contains(l)) {
            throw DomainError("ModeSpectrum: mode l=" + std::to_string(l) +
                              " outside basis with l_max=" + std::to_string(l_max_));
        }
        return l + l_max_;
    }

    /// Winding number stored at index (inverse of index_of).
    int l_at(int index) const {
        if (index < 0 || index >= size()) {
            throw DomainError("ModeSpectrum: index " + std::to_string(index) +
                              " out of range");
        }
        return index - l_max_;
    }

    friend bool operator==(const ModeSpectrum&, const ModeSpectrum&) = default;

private:
    int l_max_;
};

} // namespace oam
