#ifndef BIGRAPHIC_CAMPAIGN_HPP
#define BIGRAPHIC_CAMPAIGN_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "oracle.hpp"

namespace bigraphic
{

struct CampaignParams
{
    std::uint64_t seed = 0;
    std::uint64_t count = 100;
    GenParams gen;
    std::uint64_t budget = 10'000'000;
    unsigned workers = 1;
};

struct CampaignEntry
{
    std::uint64_t seed; // instance i uses seed + i
    ValidationRecord record;
};

/// Generates and validates `count` instances. Workers pull indices from a
/// shared counter; results land in their index slot, so the returned order
/// (and anything printed from it) does not depend on the worker count.
inline std::vector<CampaignEntry> run_campaign(const CampaignParams& params)
{
    std::vector<CampaignEntry> entries(params.count);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= params.count)
                return;
            try {
                const std::uint64_t seed = params.seed + i;
                entries[i] = {seed, validate(gen_instance(seed, params.gen), params.budget)};
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = params.count;
                return;
            }
        }
    };

    const unsigned workers = std::max(1u, params.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);
    return entries;
}

struct CampaignDigest
{
    std::uint64_t instances = 0;
    std::uint64_t partial = 0;
    std::uint64_t vacuous = 0;
    std::uint64_t forcibly = 0;
    std::uint64_t not_forcibly = 0;
    std::uint64_t vacuous_necessity_failures = 0;
    std::uint64_t witnesses_from_construction = 0;
    std::uint64_t witnesses_from_enumeration = 0;
    std::map<std::string, std::uint64_t> findings;

    std::uint64_t finding_count() const
    {
        std::uint64_t n = 0;
        for (const auto& [tag, count] : findings) n += count;
        return n;
    }
};

inline CampaignDigest summarize(const std::vector<CampaignEntry>& entries)
{
    CampaignDigest d;
    for (const auto& tag : {"existence", "sufficient", "necessary", "exact", "sufficient-degeneracy",
                            "exact-degeneracy", "necessary-witness"})
        d.findings[tag] = 0;
    for (const auto& [seed, rec] : entries) {
        ++d.instances;
        if (rec.partial) {
            ++d.partial;
            continue;
        }
        switch (rec.ground_truth.kind) {
        case ForciblyKind::forcibly: ++d.forcibly; break;
        case ForciblyKind::vacuously_forcibly: ++d.vacuous; break;
        case ForciblyKind::not_forcibly: ++d.not_forcibly; break;
        }
        d.vacuous_necessity_failures += rec.vacuous_necessity_failure;
        if (rec.necessity_witness) {
            if (rec.witness_from_construction())
                ++d.witnesses_from_construction;
            else
                ++d.witnesses_from_enumeration;
        }
        for (const auto& f : rec.findings) ++d.findings[f.tag];
    }
    return d;
}

} // namespace bigraphic

#endif // BIGRAPHIC_CAMPAIGN_HPP
