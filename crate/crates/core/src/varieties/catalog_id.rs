use std::fmt;
use std::str::FromStr;

use super::VarietyError;

/// A catalog identifier: `veronese:<n>`, `segre:<m>x<n>`, `grassmann:2,<n>`,
/// `severi16` or `projected:<source>:<seed>:<count>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CatalogId {
    Veronese(usize),
    Segre(usize, usize),
    Grassmann(usize),
    Severi16,
    Projected {
        source: Box<CatalogId>,
        seed: u64,
        count: usize,
    },
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::Veronese(n) => write!(f, "veronese:{n}"),
            CatalogId::Segre(m, n) => write!(f, "segre:{m}x{n}"),
            CatalogId::Grassmann(n) => write!(f, "grassmann:2,{n}"),
            CatalogId::Severi16 => write!(f, "severi16"),
            CatalogId::Projected { source, seed, count } => write!(f, "projected:{source}:{seed}:{count}"),
        }
    }
}

impl FromStr for CatalogId {
    type Err = VarietyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || VarietyError::UnknownId(s.to_string());
        let num = |x: &str| x.parse::<usize>().map_err(|_| unknown());
        if s == "severi16" {
            return Ok(CatalogId::Severi16);
        }
        if let Some(rest) = s.strip_prefix("projected:") {
            let (rest, count) = rest.rsplit_once(':').ok_or_else(unknown)?;
            let (source, seed) = rest.rsplit_once(':').ok_or_else(unknown)?;
            return Ok(CatalogId::Projected {
                source: Box::new(source.parse()?),
                seed: seed.parse().map_err(|_| unknown())?,
                count: num(count)?,
            });
        }
        let (family, args) = s.split_once(':').ok_or_else(unknown)?;
        match family {
            "veronese" => Ok(CatalogId::Veronese(num(args)?)),
            "segre" => {
                let (m, n) = args.split_once('x').ok_or_else(unknown)?;
                Ok(CatalogId::Segre(num(m)?, num(n)?))
            }
            "grassmann" => {
                let n = args.strip_prefix("2,").ok_or_else(unknown)?;
                Ok(CatalogId::Grassmann(num(n)?))
            }
            _ => Err(unknown()),
        }
    }
}
