//! Subcommand implementations. Each returns the table to emit.

use multiport::scattering::{
    ck_decomposition, ck_rotation, suppression_q, zero_threshold, CK_LIMIT,
};
use multiport::statistics::{
    class_probability_table, classical_class_distribution, nonsuppressed_classes,
    occupied_ports_distribution, port_occupancy_distribution, suppressed_fraction_estimate, table1,
    DistributionKind, DistributionTable, Enhancement, Mode, OccupancyVariant,
};
use multiport::{Arrangement, Rational};

use crate::cache::{Cache, CacheKey};
use crate::config::{RunConfig, TABLE2_MAX_N};
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

fn rational_cells(r: Rational) -> [Cell; 2] {
    [Cell::Int(*r.numer()), Cell::Int(*r.denom())]
}

fn enhancement_cells(e: Enhancement) -> [Cell; 3] {
    match e {
        Enhancement::Exact(r) => {
            let [num, den] = rational_cells(r);
            [Cell::Float(e.to_f64()), num, den]
        }
        Enhancement::Float(x) => [Cell::Float(x), Cell::Null, Cell::Null],
    }
}

fn with_cache(
    config: &RunConfig,
    key: CacheKey,
    compute: impl FnOnce() -> CliResult<Table>,
) -> CliResult<Table> {
    match &config.cache_dir {
        Some(dir) => Cache::open(dir)?.get_or_compute(&key, compute),
        None => compute(),
    }
}

pub const CLASSES_COLUMNS: &[&str] = &[
    "representative",
    "orbit_size",
    "q",
    "suppressed_exact",
    "suppressed_float",
    "p_classical_num",
    "p_classical_den",
    "p_quantum",
    "enhancement",
    "enhancement_num",
    "enhancement_den",
];

pub fn cmd_classes(config: &RunConfig) -> CliResult<Table> {
    let n = config.n;
    config.check_caps(n)?;
    let key = CacheKey {
        n,
        mode: config.mode.as_str().into(),
        kind: format!("classes-tol{:e}", config.tolerance),
    };
    with_cache(config, key, || {
        let rows = class_probability_table(n, config.mode)?;
        let threshold = zero_threshold(n, config.tolerance);
        let mut table = Table::new("classes", n, config.mode.as_str(), CLASSES_COLUMNS);
        for row in rows {
            let [p_num, p_den] = rational_cells(row.p_classical);
            let [enh, enh_num, enh_den] = enhancement_cells(row.enhancement);
            table.push(vec![
                Cell::Ints(row.representative.occupancies().to_vec()),
                Cell::Int(row.orbit_size as i128),
                Cell::Int(row.q as i128),
                row.suppressed_exact.map_or(Cell::Null, Cell::Bool),
                Cell::Bool(row.p_quantum < threshold),
                p_num,
                p_den,
                Cell::Float(row.p_quantum),
                enh,
                enh_num,
                enh_den,
            ]);
        }
        Ok(table)
    })
}

pub fn cmd_table1(config: &RunConfig) -> CliResult<Table> {
    let n_max = config.n;
    if n_max < 2 {
        return Err(CliError::InvalidArguments(
            "--n-max must be at least 2".into(),
        ));
    }
    config.check_caps(n_max)?;
    let exact = config.mode.uses_exact();
    let mut table = Table::new(
        "table1",
        n_max,
        config.mode.as_str(),
        &[
            "n",
            "n_total",
            "n_class",
            "n_quantum",
            "n_law",
            "n_supp",
            "law_fraction",
            "estimate",
        ],
    );
    for row in table1(n_max, exact)? {
        table.push(vec![
            Cell::Int(row.n as i128),
            Cell::Int(row.n_total as i128),
            Cell::Int(row.n_class as i128),
            Cell::Int(row.n_quantum as i128),
            Cell::Int(row.n_law as i128),
            row.n_supp.map_or_else(
                || Cell::Text("requires exact mode".into()),
                |s| Cell::Int(s as i128),
            ),
            Cell::Float(row.law_fraction()),
            Cell::Float(suppressed_fraction_estimate(row.n)?),
        ]);
    }
    Ok(table)
}

pub fn cmd_table2(config: &RunConfig) -> CliResult<Table> {
    let n_max = config.n;
    if n_max < 2 {
        return Err(CliError::InvalidArguments(
            "--n-max must be at least 2".into(),
        ));
    }
    config.check_cap("table2 n-max", n_max, TABLE2_MAX_N)?;
    let mut table = Table::new(
        "table2",
        n_max,
        config.mode.as_str(),
        &[
            "n",
            "representative",
            "orbit_size",
            "enhancement",
            "enhancement_num",
            "enhancement_den",
        ],
    );
    for n in 2..=n_max {
        let rows = match config.mode {
            Mode::Float => {
                let threshold = zero_threshold(n, config.tolerance);
                class_probability_table(n, Mode::Float)?
                    .into_iter()
                    .filter(|r| r.p_quantum >= threshold)
                    .collect()
            }
            Mode::Exact | Mode::Both => nonsuppressed_classes(n)?,
        };
        for row in rows {
            let [enh, enh_num, enh_den] = enhancement_cells(row.enhancement);
            table.push(vec![
                Cell::Int(n as i128),
                Cell::Ints(row.representative.occupancies().to_vec()),
                Cell::Int(row.orbit_size as i128),
                enh,
                enh_num,
                enh_den,
            ]);
        }
    }
    Ok(table)
}

pub fn distribution_table(dist: &DistributionTable, variant: OccupancyVariant) -> Table {
    let kind = match (dist.kind, variant) {
        (DistributionKind::PortOccupancy, OccupancyVariant::AtLeastOne) => {
            "port-occupancy-at-least-one"
        }
        (k, _) => k.as_str(),
    };
    let mut table = Table::new(
        kind,
        dist.n,
        "float",
        &[
            "category",
            "classical",
            "quantum",
            "approx",
            "classical_num",
            "classical_den",
            "approx_num",
            "approx_den",
        ],
    );
    for row in &dist.rows {
        let [c_num, c_den] = rational_cells(row.classical);
        let [a_num, a_den] = rational_cells(row.approx);
        table.push(vec![
            Cell::Text(row.label.clone()),
            Cell::Float(multiport::statistics::rational_to_f64(row.classical)),
            Cell::Float(row.quantum),
            Cell::Float(multiport::statistics::rational_to_f64(row.approx)),
            c_num,
            c_den,
            a_num,
            a_den,
        ]);
    }
    table
}

/// The quantum column always comes from the floating path (`Q ≠ 0` classes
/// are exactly zero), so the mode does not enter the result.
pub fn cmd_dist(
    config: &RunConfig,
    kind: DistributionKind,
    variant: OccupancyVariant,
) -> CliResult<Table> {
    let n = config.n;
    config.check_cap("n", n, crate::config::FLOAT_MAX_N)?;
    let variant_name = match variant {
        OccupancyVariant::Marginal => "marginal",
        OccupancyVariant::AtLeastOne => "at-least-one",
    };
    let key = CacheKey {
        n,
        mode: "float".into(),
        kind: format!("dist-{}-{variant_name}", kind.as_str()),
    };
    with_cache(config, key, || {
        let dist = match kind {
            DistributionKind::OccupiedPorts => occupied_ports_distribution(n)?,
            DistributionKind::PortOccupancy => port_occupancy_distribution(n, variant)?,
            DistributionKind::ClassicalClasses => classical_class_distribution(n)?,
        };
        Ok(distribution_table(&dist, variant))
    })
}

pub fn cmd_ck(config: &RunConfig, arrangement: &str) -> CliResult<Table> {
    let s: Arrangement = arrangement.parse()?;
    let n = s.n();
    if n > CK_LIMIT {
        return Err(CliError::InvalidArguments(format!(
            "c_k brute force is limited to n ≤ {CK_LIMIT}, got n = {n}"
        )));
    }
    let c = ck_decomposition(&s)?;
    let mut table = Table::new("ck", n, config.mode.as_str(), &["k", "c_k"]);
    for (k, &ck) in c.coeffs().iter().enumerate() {
        table.push(vec![Cell::Int(k as i128), Cell::Int(ck)]);
    }
    table.meta = vec![
        ("arrangement".into(), Cell::Ints(s.occupancies().to_vec())),
        ("q".into(), Cell::Int(suppression_q(&s) as i128)),
        ("coefficient_sum".into(), Cell::Int(c.coefficient_sum())),
        ("vanishes".into(), Cell::Bool(c.is_zero()?)),
        ("exact_rotation".into(), Cell::Int(ck_rotation(&s) as i128)),
    ];
    Ok(table)
}
