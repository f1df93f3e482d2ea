//! Input data: the embedded copies, or files under `$AXCOUNT_DATA`.

use std::path::PathBuf;

use axcount::conway::{parse_generators, reduce_mod2, verify_automorphism, CO0_GENERATORS_TXT};
use axcount::counting::{TransitionMatrix, AXES_COLSUM, FEASIBLE_COLSUM, TABLE2_TXT, TABLE4_TXT};
use axcount::golay::{parse_permutations, GolayCode, M24Element, GOLAY_BASIS_TXT, M24_GENERATORS_TXT};
use axcount::leech::{parse_basis, Leech, LEECH_BASIS_TXT};
use axcount::tables::{
    parse_fusion_table, parse_orbit_table, ClassicalOrders, Tables, CLASSICAL_ORDERS_TXT, TABLE1_TXT, TABLE3_TXT,
    TABLE5_TXT, TABLE6_TXT,
};
use axcount::Gf2Matrix;

pub const ENV_VAR: &str = "AXCOUNT_DATA";

pub struct Data {
    dir: Option<PathBuf>,
}

impl Data {
    pub fn from_env() -> Self {
        Data { dir: std::env::var_os(ENV_VAR).map(PathBuf::from) }
    }

    fn text(&self, name: &str, embedded: &'static str) -> Result<String, String> {
        match &self.dir {
            None => Ok(embedded.to_string()),
            Some(d) => {
                let p = d.join(name);
                std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))
            }
        }
    }

    pub fn golay(&self) -> Result<&'static GolayCode, String> {
        if self.dir.is_none() {
            return Ok(GolayCode::standard());
        }
        let code = GolayCode::from_text(&self.text("golay_basis.txt", GOLAY_BASIS_TXT)?).map_err(|e| e.to_string())?;
        Ok(Box::leak(Box::new(code)))
    }

    pub fn m24_generators(&self) -> Result<Vec<M24Element>, String> {
        let code = self.golay()?;
        let gens = parse_permutations(&self.text("m24_generators.txt", M24_GENERATORS_TXT)?).map_err(|e| e.to_string())?;
        if let Some(i) = gens.iter().position(|g| !code.preserves(g)) {
            return Err(format!("m24 generator {i} does not preserve the Golay code"));
        }
        Ok(gens)
    }

    pub fn leech(&self) -> Result<&'static Leech, String> {
        if self.dir.is_none() {
            return Ok(Leech::standard());
        }
        let basis = parse_basis(&self.text("leech_basis.txt", LEECH_BASIS_TXT)?).map_err(|e| e.to_string())?;
        let leech = Leech::from_basis(self.golay()?.clone(), basis).map_err(|e| e.to_string())?;
        Ok(Box::leak(Box::new(leech)))
    }

    pub fn co1_generators(&self) -> Result<Vec<Gf2Matrix>, String> {
        let leech = self.leech()?;
        let gens = parse_generators(&self.text("co0_generators.txt", CO0_GENERATORS_TXT)?).map_err(|e| e.to_string())?;
        gens.iter()
            .map(|g| {
                if !verify_automorphism(leech, g) {
                    return Err(format!("{} is not an automorphism of the Leech lattice", g.name()));
                }
                reduce_mod2(leech, g).map_err(|e| e.to_string())
            })
            .collect()
    }

    pub fn table2(&self) -> Result<TransitionMatrix, String> {
        TransitionMatrix::parse(&self.text("table2.txt", TABLE2_TXT)?, AXES_COLSUM).map_err(|e| e.to_string())
    }

    pub fn table4(&self) -> Result<TransitionMatrix, String> {
        TransitionMatrix::parse(&self.text("table4.txt", TABLE4_TXT)?, FEASIBLE_COLSUM).map_err(|e| e.to_string())
    }

    pub fn tables(&self) -> Result<Tables, String> {
        let e = |e: axcount::DataError| e.to_string();
        Ok(Tables {
            table1: parse_orbit_table(&self.text("table1.txt", TABLE1_TXT)?, "table1").map_err(e)?,
            table3: parse_orbit_table(&self.text("table3.txt", TABLE3_TXT)?, "table3").map_err(e)?,
            table5: parse_fusion_table(&self.text("table5.txt", TABLE5_TXT)?, "table5").map_err(e)?,
            table6: parse_fusion_table(&self.text("table6.txt", TABLE6_TXT)?, "table6").map_err(e)?,
            orders: ClassicalOrders::parse(&self.text("classical_orders.txt", CLASSICAL_ORDERS_TXT)?).map_err(e)?,
        })
    }
}
