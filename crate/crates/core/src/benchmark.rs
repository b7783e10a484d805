//! Published benchmark tables for the four reference agents across the
//! five reference domains. They serve as calibration targets for the
//! simulator and as fixtures for consistency checks.
//!
//! Rows are indexed in [`AgentId::BUILTIN`] × [`DomainId::BUILTIN`] order.

use crate::model::{AgentId, DomainId};

/// Tasks per domain in the reference setup.
pub const TASK_COUNTS: [u32; 5] = [200, 150, 100, 120, 180];

/// One agent × domain row of the per-domain results table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellRow {
    /// Percent.
    pub gcr: f64,
    pub aix: f64,
    /// Seconds.
    pub dtt: f64,
    pub oas: f64,
}

/// One agent row of the overall results table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverallRow {
    pub gcr: f64,
    pub aix: f64,
    pub dtt: f64,
    pub ces: f64,
    pub mtr: f64,
    /// Normalized to `[0, 1]`.
    pub tdi_norm: f64,
    pub oas: f64,
    pub crs: f64,
    pub cqi: f64,
}

/// Zero-shot vs few-shot completion, proportions; `ar` in percent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptabilityRow {
    pub zero_shot: f64,
    pub few_shot: f64,
    pub ad: f64,
    pub ar: f64,
}

/// KPI in native units, dollars, and the efficiency ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BusinessRow {
    pub kpi_value: f64,
    pub monetary: f64,
    pub op_cost: f64,
    pub bie: f64,
}

const fn c(gcr: f64, aix: f64, dtt: f64, oas: f64) -> CellRow {
    CellRow { gcr, aix, dtt, oas }
}

const fn a(zero_shot: f64, few_shot: f64, ad: f64, ar: f64) -> AdaptabilityRow {
    AdaptabilityRow { zero_shot, few_shot, ad, ar }
}

const fn b(kpi_value: f64, monetary: f64, op_cost: f64, bie: f64) -> BusinessRow {
    BusinessRow { kpi_value, monetary, op_cost, bie }
}

pub const CELLS: [[CellRow; 5]; 4] = [
    [
        c(78.0, 0.8831, 206.08, 7.84),
        c(76.67, 0.8572, 228.71, 7.77),
        c(87.0, 0.9328, 147.49, 7.89),
        c(73.33, 0.8301, 243.04, 7.50),
        c(82.78, 0.9400, 174.54, 7.75),
    ],
    [
        c(84.0, 0.9043, 236.28, 8.17),
        c(70.0, 0.8862, 264.20, 8.23),
        c(88.0, 0.9398, 173.32, 8.17),
        c(81.67, 0.8310, 287.74, 8.14),
        c(85.56, 0.9571, 199.04, 8.19),
    ],
    [
        c(82.0, 0.8446, 184.94, 8.13),
        c(85.33, 0.8193, 198.28, 8.10),
        c(89.0, 0.9122, 141.92, 7.86),
        c(78.33, 0.8087, 221.38, 8.18),
        c(90.56, 0.8897, 158.85, 8.20),
    ],
    [
        c(88.0, 0.9263, 171.90, 8.54),
        c(84.0, 0.8897, 195.67, 8.62),
        c(93.0, 0.9652, 142.62, 8.45),
        c(87.5, 0.8801, 207.12, 8.57),
        c(92.22, 0.9715, 148.68, 8.68),
    ],
];

pub const OVERALL: [OverallRow; 4] = [
    OverallRow { gcr: 79.33, aix: 0.8897, dtt: 201.14, ces: 2587.92, mtr: 23.73, tdi_norm: 0.5764, oas: 7.76, crs: 63.33, cqi: 3.85 },
    OverallRow { gcr: 81.73, aix: 0.9064, dtt: 232.77, ces: 3221.02, mtr: 23.33, tdi_norm: 0.5441, oas: 8.18, crs: 68.80, cqi: 4.12 },
    OverallRow { gcr: 85.07, aix: 0.8536, dtt: 181.44, ces: 2283.03, mtr: 27.47, tdi_norm: 0.6899, oas: 8.11, crs: 68.40, cqi: 3.84 },
    OverallRow { gcr: 88.80, aix: 0.9276, dtt: 172.81, ces: 2464.64, mtr: 28.80, tdi_norm: 0.6440, oas: 8.58, crs: 77.33, cqi: 4.28 },
];

pub const ADAPTABILITY: [[AdaptabilityRow; 5]; 4] = [
    [
        a(0.62, 0.84, 0.22, 35.48),
        a(0.58, 0.80, 0.22, 37.93),
        a(0.70, 0.92, 0.22, 31.43),
        a(0.54, 0.76, 0.22, 40.74),
        a(0.66, 0.88, 0.22, 33.33),
    ],
    [
        a(0.66, 0.90, 0.24, 36.36),
        a(0.62, 0.86, 0.24, 38.71),
        a(0.74, 0.98, 0.24, 32.43),
        a(0.58, 0.82, 0.24, 41.38),
        a(0.70, 0.94, 0.24, 34.29),
    ],
    [
        a(0.67, 0.84, 0.17, 25.37),
        a(0.63, 0.80, 0.17, 26.98),
        a(0.75, 0.92, 0.17, 22.67),
        a(0.59, 0.76, 0.17, 28.81),
        a(0.71, 0.88, 0.17, 23.94),
    ],
    [
        a(0.71, 0.98, 0.27, 38.03),
        a(0.67, 0.94, 0.27, 40.30),
        a(0.79, 1.00, 0.21, 26.58),
        a(0.63, 0.90, 0.27, 42.86),
        a(0.75, 1.00, 0.25, 33.33),
    ],
];

pub const BUSINESS: [[BusinessRow; 5]; 4] = [
    [
        b(12240.0, 12240.0, 392.40, 31.19),
        b(14.40, 14400.0, 363.79, 39.58),
        b(10.44, 8352.0, 217.31, 38.44),
        b(33.00, 4950.0, 395.31, 12.52),
        b(18.48, 9240.0, 282.00, 32.77),
    ],
    [
        b(13104.0, 13104.0, 438.01, 29.92),
        b(12.60, 12600.0, 421.80, 29.87),
        b(10.56, 8448.0, 216.20, 39.07),
        b(36.60, 5490.0, 465.94, 11.78),
        b(19.14, 9570.0, 290.62, 32.93),
    ],
    [
        b(12792.0, 12792.0, 358.79, 35.66),
        b(15.36, 15360.0, 343.01, 44.78),
        b(10.68, 8544.0, 187.87, 45.48),
        b(35.10, 5265.0, 363.85, 14.47),
        b(20.28, 10140.0, 252.64, 40.14),
    ],
    [
        b(13728.0, 13728.0, 388.24, 35.36),
        b(15.12, 15120.0, 367.41, 41.15),
        b(11.16, 8928.0, 189.90, 47.02),
        b(39.38, 5907.0, 393.88, 14.99),
        b(20.64, 10320.0, 255.15, 40.44),
    ],
];

/// Dollars per KPI unit for each reference domain.
pub const KPI_CONVERSION: [f64; 5] = [1.0, 1000.0, 800.0, 150.0, 500.0];

pub fn agent_index(agent: &AgentId) -> Option<usize> {
    AgentId::BUILTIN.iter().position(|x| x == agent)
}

pub fn domain_index(domain: &DomainId) -> Option<usize> {
    DomainId::BUILTIN.iter().position(|x| x == domain)
}

fn index(agent: &AgentId, domain: &DomainId) -> Option<(usize, usize)> {
    Some((agent_index(agent)?, domain_index(domain)?))
}

pub fn cell(agent: &AgentId, domain: &DomainId) -> Option<CellRow> {
    index(agent, domain).map(|(i, j)| CELLS[i][j])
}

pub fn overall(agent: &AgentId) -> Option<OverallRow> {
    agent_index(agent).map(|i| OVERALL[i])
}

pub fn adaptability(agent: &AgentId, domain: &DomainId) -> Option<AdaptabilityRow> {
    index(agent, domain).map(|(i, j)| ADAPTABILITY[i][j])
}

pub fn business(agent: &AgentId, domain: &DomainId) -> Option<BusinessRow> {
    index(agent, domain).map(|(i, j)| BUSINESS[i][j])
}

pub fn task_count(domain: &DomainId) -> Option<u32> {
    domain_index(domain).map(|j| TASK_COUNTS[j])
}
