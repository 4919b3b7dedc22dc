#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "contagion/ledger.hpp"
#include "contagion/matrix.hpp"

namespace contagion {

enum class QuarantineReason : std::uint8_t { Diagnosed, Traced };

// Tracks isolated individuals together with the exact off-diagonal weights
// removed from the matrix, so release can restore them bit-identically.
class QuarantineRegistry {
public:
    struct Record {
        QuarantineReason reason;
        std::uint32_t since_round;
        bool was_infected;  // infected at entry or at any point while isolated
        std::map<std::uint32_t, double> saved;
    };

    bool contains(std::uint32_t i) const { return records_.count(i) != 0; }
    std::size_t size() const { return records_.size(); }
    const std::map<std::uint32_t, Record>& records() const { return records_; }
    std::uint32_t warnings() const { return warnings_; }

    // Saves and zeroes i's off-diagonal row/column; the diagonal stays so the
    // quarantined decay toward recovery. Weights toward already-quarantined
    // counterparts are read from the counterpart's saved row, so the registry
    // always holds true pre-quarantine values. Dead or already-quarantined
    // targets are a warned no-op.
    void quarantine(ContactMatrix& m, HealthLedger& ledger, std::uint32_t i,
                    QuarantineReason reason, std::uint32_t round) {
        if (ledger.dead(i) || contains(i)) {
            ++warnings_;
            return;
        }
        Record rec;
        rec.reason = reason;
        rec.since_round = round;
        rec.was_infected = ledger.state(i) == Health::Infected;
        for (const ContactMatrix::Entry& e : m.detach_off_diagonal(i))
            rec.saved.emplace(e.col, e.w);
        for (const auto& [j, other] : records_) {
            auto it = other.saved.find(i);
            if (it != other.saved.end()) rec.saved[j] = it->second;
        }
        records_.emplace(i, std::move(rec));
        ledger.set_quarantined(i, true);
    }

    // Restores i's saved weights except toward still-quarantined or dead
    // counterparts; those edges come back when the counterpart is released.
    void release(ContactMatrix& m, HealthLedger& ledger, std::uint32_t i) {
        auto it = records_.find(i);
        if (it == records_.end()) return;
        Record rec = std::move(it->second);
        records_.erase(it);
        ledger.set_quarantined(i, false);
        for (const auto& [j, w] : rec.saved) {
            if (ledger.dead(j) || contains(j)) continue;
            m.set(i, j, w);
        }
    }

    // Dead individuals leave quarantine without matrix restoration.
    void drop(HealthLedger& ledger, std::uint32_t i) {
        auto it = records_.find(i);
        if (it == records_.end()) return;
        records_.erase(it);
        ledger.set_quarantined(i, false);
    }

    void note_infection(std::uint32_t i) {
        auto it = records_.find(i);
        if (it != records_.end()) it->second.was_infected = true;
    }

private:
    std::map<std::uint32_t, Record> records_;
    std::uint32_t warnings_ = 0;
};

// Close contacts of an individual: positive off-diagonal entries of its row.
// Dead rows are zeroed, so the dead are excluded naturally.
std::vector<std::uint32_t> trace_contacts(const ContactMatrix& m, std::uint32_t i);

}  // namespace contagion
