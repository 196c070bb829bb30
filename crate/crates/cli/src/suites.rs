//! Named verification suites over the library's check entry points.
//! `all` fans the independent suites out across threads and assembles the
//! verdicts in a fixed declaration order, so reports are byte-stable.

use crazyring::amalgam::{check_gamma, check_sigma, SigmaRegistry};
use crazyring::gamma0::check_gamma0;
use crazyring::report::Report;
use crazyring::slinfty::{check_cosets, check_orders};
use crazyring::steinberg::{
    check_delta0_steinberg, check_k2, check_normal_generation_identities,
    check_steinberg_relations,
};
use crazyring::thompson::check_thompson;

#[derive(Copy, Clone, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Suite {
    All,
    Ring,
    Thompson,
    Steinberg,
    K2,
    Gamma0,
    Sigma,
    Amalgam,
    Cosets,
    Orders,
}

/// How many of the first dyadics index the small generator sweep.
const DELTA0_LABELS: u64 = 3;

fn steinberg_suite(samples: u64, seed: u64) -> Report {
    let mut report = check_steinberg_relations(samples, seed);
    report.merge(check_normal_generation_identities(samples, seed));
    report.merge(check_delta0_steinberg(DELTA0_LABELS, seed));
    report
}

fn sigma_amalgam_suite(reg: &mut SigmaRegistry, samples: u64, seed: u64) -> (Report, Report) {
    // these two share the registry, so they run as one sequential chain
    let sigma = check_sigma(reg, samples, seed);
    let gamma = check_gamma(reg, samples, seed);
    (sigma, gamma)
}

/// Run one suite (or all of them) and return the assembled report.
pub fn run(suite: Suite, samples: u64, seed: u64, reg: &mut SigmaRegistry) -> Report {
    match suite {
        Suite::Ring => crazyring::ring::check(samples, seed),
        Suite::Thompson => check_thompson(samples, seed),
        Suite::Steinberg => steinberg_suite(samples, seed),
        Suite::K2 => check_k2(seed),
        Suite::Gamma0 => check_gamma0(samples, seed),
        Suite::Sigma => check_sigma(reg, samples, seed),
        Suite::Amalgam => check_gamma(reg, samples, seed),
        Suite::Cosets => check_cosets(samples, seed),
        Suite::Orders => check_orders(samples, seed),
        Suite::All => {
            let (ring, thompson, steinberg, k2, gamma0, (sigma, amalgam), cosets, orders) =
                std::thread::scope(|s| {
                    let ring = s.spawn(|| crazyring::ring::check(samples, seed));
                    let thompson = s.spawn(|| check_thompson(samples, seed));
                    let steinberg = s.spawn(|| steinberg_suite(samples, seed));
                    let k2 = s.spawn(|| check_k2(seed));
                    let gamma0 = s.spawn(|| check_gamma0(samples, seed));
                    let sig_amal = s.spawn(|| sigma_amalgam_suite(reg, samples, seed));
                    let cosets = s.spawn(|| check_cosets(samples, seed));
                    let orders = s.spawn(|| check_orders(samples, seed));
                    (
                        ring.join().expect("suite thread"),
                        thompson.join().expect("suite thread"),
                        steinberg.join().expect("suite thread"),
                        k2.join().expect("suite thread"),
                        gamma0.join().expect("suite thread"),
                        sig_amal.join().expect("suite thread"),
                        cosets.join().expect("suite thread"),
                        orders.join().expect("suite thread"),
                    )
                });
            let mut report = ring;
            for part in [thompson, steinberg, k2, gamma0, sigma, amalgam, cosets, orders] {
                report.merge(part);
            }
            report
        }
    }
}

/// The name used in report envelopes.
pub fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::All => "all",
        Suite::Ring => "ring",
        Suite::Thompson => "thompson",
        Suite::Steinberg => "steinberg",
        Suite::K2 => "k2",
        Suite::Gamma0 => "gamma0",
        Suite::Sigma => "sigma",
        Suite::Amalgam => "amalgam",
        Suite::Cosets => "cosets",
        Suite::Orders => "orders",
    }
}
