//! Serializable solver output.

use hexbubble::hexnorm::PolyChain;
use hexbubble::solver::figure_geometry;
use hexbubble::{Configuration, DoubleBubbleResult};
use serde::{Deserialize, Serialize};

use crate::format::{sig, sig_all};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BubbleRecord {
    pub volume: String,
    /// `D`-lengths of the sides in traversal order.
    pub sides: Vec<String>,
    /// Counterclockwise `[x, y]` pairs.
    pub vertices: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub configuration: String,
    pub perimeter: String,
    #[serde(rename = "L1")]
    pub l1: String,
    #[serde(rename = "L2")]
    pub l2: String,
    pub joint_length: String,
    pub bubble_a: BubbleRecord,
    pub bubble_b: BubbleRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub alpha: String,
    pub case: String,
    pub perimeter: String,
    #[serde(rename = "L1")]
    pub l1: String,
    #[serde(rename = "L2")]
    pub l2: String,
    pub embedded_perimeter: String,
    pub kissing_perimeter: String,
    pub solutions: Vec<SolutionRecord>,
}

fn vertices(c: &PolyChain) -> Vec<[String; 2]> {
    c.vertices().iter().map(|p| [sig(p.x), sig(p.y)]).collect()
}

impl SolutionRecord {
    pub fn new(config: &Configuration, alpha: f64) -> Self {
        let (a, b) = figure_geometry(config);
        let (sa, sb) = config.side_lengths();
        SolutionRecord {
            configuration: config.case().as_str().to_owned(),
            perimeter: sig(config.perimeter()),
            l1: sig(config.l1()),
            l2: sig(config.l2()),
            joint_length: sig(config.joint_length()),
            bubble_a: BubbleRecord { volume: sig(1.0), sides: sig_all(&sa), vertices: vertices(&a) },
            bubble_b: BubbleRecord { volume: sig(alpha), sides: sig_all(&sb), vertices: vertices(&b) },
        }
    }
}

impl OutputRecord {
    pub fn new(r: &DoubleBubbleResult) -> Self {
        let first = &r.solutions[0];
        OutputRecord {
            alpha: sig(r.alpha),
            case: r.case.as_str().to_owned(),
            perimeter: sig(r.perimeter),
            l1: sig(first.l1()),
            l2: sig(first.l2()),
            embedded_perimeter: sig(r.embedded_perimeter),
            kissing_perimeter: sig(r.kissing_perimeter),
            solutions: r.solutions.iter().map(|c| SolutionRecord::new(c, r.alpha)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records contain only strings")
    }

    /// Plain-text summary, one solution block per configuration.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "alpha      {}\ncase       {}\nperimeter  {}\nembedded   {}\nkissing    {}\n",
            self.alpha, self.case, self.perimeter, self.embedded_perimeter, self.kissing_perimeter
        );
        for sol in &self.solutions {
            s.push_str(&format!(
                "\n[{}]\nperimeter  {}\nL1         {}\nL2         {}\njoint      {}\n",
                sol.configuration, sol.perimeter, sol.l1, sol.l2, sol.joint_length
            ));
            for (name, b) in [("A", &sol.bubble_a), ("B", &sol.bubble_b)] {
                s.push_str(&format!("{name} volume   {}\n{name} sides    {}\n", b.volume, b.sides.join(" ")));
                let vs: Vec<String> = b.vertices.iter().map(|[x, y]| format!("({x}, {y})")).collect();
                s.push_str(&format!("{name} vertices {}\n", vs.join(" ")));
            }
        }
        s
    }
}
