use std::fmt::Write as _;

use fusion_core::realization::RealizationReport;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct FlagsJson {
    pub f_generated: bool,
    pub left_stable: bool,
    pub right_stable: bool,
    pub contains_identity: bool,
    pub embeds: bool,
    pub realized: bool,
}

#[derive(Serialize)]
pub struct MorphismsJson {
    pub accepted: usize,
    pub rejected: usize,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub entry: String,
    pub group_order: usize,
    pub p: Option<usize>,
    pub num_subgroups: usize,
    pub out_order: usize,
    /// A JSON number when it fits in 64 bits, a decimal string otherwise.
    pub m: Value,
    pub rank_r: usize,
    #[serde(rename = "order_G")]
    pub order_g: String,
    pub char_index_residue: Option<usize>,
    pub flags: FlagsJson,
    pub morphisms: MorphismsJson,
    pub intertwiner_agreement: Option<bool>,
    pub x: Vec<String>,
}

impl ReportJson {
    pub fn new(entry: &str, r: &RealizationReport) -> Self {
        let m = match r.m.to_u64() {
            Some(v) => Value::from(v),
            None => Value::from(r.m.to_string()),
        };
        Self {
            entry: entry.to_string(),
            group_order: r.group_order,
            p: r.p,
            num_subgroups: r.num_subgroups,
            out_order: r.out_order,
            m,
            rank_r: r.rank_r,
            order_g: r.order_g.to_string(),
            char_index_residue: r.char_index_residue,
            flags: FlagsJson {
                f_generated: r.flags.f_generated,
                left_stable: r.flags.left_stable,
                right_stable: r.flags.right_stable,
                contains_identity: r.flags.contains_identity,
                embeds: r.flags.embeds,
                realized: r.flags.realized,
            },
            morphisms: MorphismsJson {
                accepted: r.morphisms.accepted,
                rejected: r.morphisms.rejected,
            },
            intertwiner_agreement: r.intertwiner_agreement,
            x: r.x.lines().map(str::to_string).collect(),
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

pub fn render_text(entry: &str, r: &RealizationReport) -> String {
    let mut out = String::new();
    let f = &r.flags;
    let _ = writeln!(out, "entry: {entry}");
    let _ = writeln!(out, "group order: {}", r.group_order);
    let _ = writeln!(out, "p: {}", opt(r.p));
    let _ = writeln!(out, "subgroups: {}", r.num_subgroups);
    let _ = writeln!(out, "outer automorphisms: {}", r.out_order);
    let _ = writeln!(out, "m: {}", r.m);
    let _ = writeln!(out, "rank r: {}", r.rank_r);
    let _ = writeln!(out, "order of G: {}", r.order_g);
    let _ = writeln!(out, "r mod p: {}", opt(r.char_index_residue));
    let _ = writeln!(out, "flags:");
    for (name, v) in [
        ("f_generated", f.f_generated),
        ("left_stable", f.left_stable),
        ("right_stable", f.right_stable),
        ("contains_identity", f.contains_identity),
        ("embeds", f.embeds),
        ("realized", f.realized),
    ] {
        let _ = writeln!(out, "  {name}: {v}");
    }
    let _ = writeln!(
        out,
        "morphisms: {} accepted, {} rejected",
        r.morphisms.accepted, r.morphisms.rejected
    );
    let check = match r.intertwiner_agreement {
        Some(true) => "agrees",
        Some(false) => "DISAGREES",
        None => "skipped",
    };
    let _ = writeln!(out, "intertwiner search: {check}");
    let _ = writeln!(out, "X:");
    for line in r.x.lines() {
        let _ = writeln!(out, "  {line}");
    }
    out
}

pub fn table_header() -> String {
    format!(
        "{:<14} {:>4} {:>4} {:>6} {:>4} {:>24} {:>6} {:>8}",
        "entry", "|S|", "out", "m", "r", "|G|", "right", "realized"
    )
}

pub fn table_row(entry: &str, r: &RealizationReport) -> String {
    let order = r.order_g.to_string();
    let order = if order.len() > 24 {
        format!("{}..e{}", &order[..8], order.len() - 1)
    } else {
        order
    };
    format!(
        "{:<14} {:>4} {:>4} {:>6} {:>4} {:>24} {:>6} {:>8}",
        entry,
        r.group_order,
        r.out_order,
        r.m.to_string(),
        r.rank_r,
        order,
        r.flags.right_stable,
        r.flags.realized
    )
}
