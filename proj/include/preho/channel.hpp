#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "preho/geometry.hpp"
#include "preho/params.hpp"

namespace preho {

// One visible link as seen by a SINR model.
struct LinkContext {
    int ue = 0;
    int sat_id = 0;
    int slot = 0;
    Ecef ue_pos;
    Ecef sat_pos;
    double elevation_deg = 0.0;
};

class SinrModel {
public:
    virtual ~SinrModel() = default;
    virtual double sinr_linear(const LinkContext& link) const = 0;
};

// EIRP + G/T - FSPL - k - 10log10(B) - margin, plus optional log-normal
// shadowing drawn from a generator seeded by (seed, ue, sat, slot).
class FreeSpaceLinkBudget final : public SinrModel {
public:
    explicit FreeSpaceLinkBudget(ChannelParams params) : params_(std::move(params)) {}

    double sinr_linear(const LinkContext& link) const override;

    double sinr_db(const LinkContext& link) const;
    double shadowing_db(int ue, int sat_id, int slot) const;

private:
    ChannelParams params_;
};

double free_space_path_loss_db(double distance_km, double carrier_hz);

struct LinkRate {
    double sinr_linear = 0.0;
    double dmax_mb = 0.0;

    friend bool operator==(const LinkRate&, const LinkRate&) = default;
};

// Entries aligned with VisibilityMap: at(ue, slot)[k] describes vis.at(ue, slot)[k].
class RateMatrix {
public:
    RateMatrix() = default;
    RateMatrix(int num_ues, int num_slots)
        : num_ues_(num_ues), num_slots_(num_slots), rates_(static_cast<std::size_t>(num_ues) * num_slots) {}

    int num_ues() const { return num_ues_; }
    int num_slots() const { return num_slots_; }

    const std::vector<LinkRate>& at(int ue, int slot) const { return rates_[static_cast<std::size_t>(ue) * num_slots_ + slot]; }
    std::vector<LinkRate>& at(int ue, int slot) { return rates_[static_cast<std::size_t>(ue) * num_slots_ + slot]; }

    friend bool operator==(const RateMatrix&, const RateMatrix&) = default;

private:
    int num_ues_ = 0;
    int num_slots_ = 0;
    std::vector<std::vector<LinkRate>> rates_;
};

/// slot_duration * bandwidth * log2(1 + sinr), in megabits.
double dmax_mb(double sinr_linear, double bandwidth_hz, double slot_duration_s);

RateMatrix compute_rates(const Scenario& scenario, const SatelliteTable& sats, const VisibilityMap& vis,
                         const SinrModel& model);
RateMatrix compute_rates(const Scenario& scenario, const SatelliteTable& sats, const VisibilityMap& vis);

void write_rates_csv(const VisibilityMap& vis, const RateMatrix& rates, std::ostream& out);

}  // namespace preho
