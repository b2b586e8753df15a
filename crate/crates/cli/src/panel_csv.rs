//! Long-format panel files.
//!
//! The panel file has a header `id,time,y,<x names...>` and one row per
//! individual and period. The prediction file has `id,<x names...>` with one
//! row per individual holding `x_{i,T+1}`. Regressor columns are matched by
//! name.

use std::collections::HashMap;
use std::path::Path;

use panel_msfe::panel::Panel;

use crate::error::{CliError, Result};

struct Table {
    headers: Vec<String>,
    rows: Vec<csv::StringRecord>,
}

fn read_table(path: &Path) -> Result<Table> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| open_error(path, e))?;
    let headers = rdr.headers()?.iter().map(str::to_string).collect();
    let rows = rdr.records().collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Table { headers, rows })
}

fn open_error(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::Validation(format!("{}: {other:?}", path.display())),
    }
}

fn number(rec: &csv::StringRecord, row: usize, col: usize, name: &str) -> Result<f64> {
    rec.get(col)
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::NonNumericCell {
            row,
            col: name.to_string(),
        })
}

fn column(t: &Table, name: &str, path: &Path) -> Result<usize> {
    t.headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| CliError::Validation(format!("{}: missing column `{name}`", path.display())))
}

/// Reads a balanced panel and its prediction regressors.
///
/// Individuals keep the order of their first appearance; periods are sorted
/// by time index, which must be the same contiguous run for everyone.
pub fn load_panel(panel_path: &Path, predict_path: &Path) -> Result<Panel> {
    let t = read_table(panel_path)?;
    let id_col = column(&t, "id", panel_path)?;
    let time_col = column(&t, "time", panel_path)?;
    let y_col = column(&t, "y", panel_path)?;
    let x_cols: Vec<usize> = (0..t.headers.len())
        .filter(|c| ![id_col, time_col, y_col].contains(c))
        .collect();
    if x_cols.is_empty() {
        return Err(CliError::Validation(format!(
            "{}: no regressor columns",
            panel_path.display()
        )));
    }

    let mut order: Vec<String> = Vec::new();
    let mut rows: HashMap<String, Vec<(i64, f64, Vec<f64>)>> = HashMap::new();
    for (r, rec) in t.rows.iter().enumerate() {
        // Data rows are numbered from 2: the header is row 1.
        let row = r + 2;
        let id = rec.get(id_col).unwrap_or("").to_string();
        let time = rec
            .get(time_col)
            .and_then(|s| s.parse::<i64>().ok())
            .ok_or_else(|| CliError::NonNumericCell {
                row,
                col: "time".into(),
            })?;
        let y = number(rec, row, y_col, "y")?;
        let x = x_cols
            .iter()
            .map(|&c| number(rec, row, c, &t.headers[c]))
            .collect::<Result<Vec<_>>>()?;
        if !rows.contains_key(&id) {
            order.push(id.clone());
        }
        rows.entry(id).or_default().push((time, y, x));
    }
    if order.is_empty() {
        return Err(CliError::Validation(format!(
            "{}: no data rows",
            panel_path.display()
        )));
    }

    let mut times: Option<Vec<i64>> = None;
    for id in &order {
        let obs = rows.get_mut(id).unwrap();
        obs.sort_by_key(|o| o.0);
        let these: Vec<i64> = obs.iter().map(|o| o.0).collect();
        let contiguous = these.windows(2).all(|w| w[1] == w[0] + 1);
        match &times {
            _ if !contiguous => return Err(CliError::UnbalancedPanel { id: id.clone() }),
            Some(ts) if *ts != these => return Err(CliError::UnbalancedPanel { id: id.clone() }),
            Some(_) => {}
            None => times = Some(these),
        }
    }

    let p = read_table(predict_path)?;
    let pid = column(&p, "id", predict_path)?;
    let pcols = x_cols
        .iter()
        .map(|&c| column(&p, &t.headers[c], predict_path))
        .collect::<Result<Vec<_>>>()?;
    let mut next: HashMap<String, Vec<f64>> = HashMap::new();
    for (r, rec) in p.rows.iter().enumerate() {
        let row = r + 2;
        let x = pcols
            .iter()
            .map(|&c| number(rec, row, c, &p.headers[c]))
            .collect::<Result<Vec<_>>>()?;
        next.insert(rec.get(pid).unwrap_or("").to_string(), x);
    }

    let (n, t_len, k) = (order.len(), times.unwrap().len(), x_cols.len());
    let mut x = Vec::with_capacity(n * t_len * k);
    let mut y = Vec::with_capacity(n * t_len);
    let mut xn = Vec::with_capacity(n * k);
    for id in &order {
        let obs = &rows[id];
        for c in 0..k {
            x.extend(obs.iter().map(|o| o.2[c]));
        }
        y.extend(obs.iter().map(|o| o.1));
        let v = next
            .get(id)
            .ok_or_else(|| CliError::MissingPrediction { id: id.clone() })?;
        xn.extend_from_slice(v);
    }
    Ok(Panel::new(n, t_len, k, x, y, xn)?)
}

/// Writes a panel in the format [`load_panel`] reads, with individuals named
/// `0..N` and periods `1..=T`.
pub fn write_panel(panel: &Panel, panel_path: &Path, predict_path: &Path) -> Result<()> {
    let k = panel.k();
    let names: Vec<String> = (1..=k).map(|c| format!("x{c}")).collect();
    let mut w = csv::Writer::from_path(panel_path).map_err(|e| open_error(panel_path, e))?;
    let mut header = vec!["id".to_string(), "time".into(), "y".into()];
    header.extend(names.iter().cloned());
    w.write_record(&header)?;
    for i in 0..panel.n() {
        for s in 0..panel.t_len() {
            let mut rec = vec![
                i.to_string(),
                (s + 1).to_string(),
                panel.response(i)[s].to_string(),
            ];
            rec.extend((0..k).map(|c| panel.x_at(i, s, c).to_string()));
            w.write_record(&rec)?;
        }
    }
    w.flush().map_err(|e| CliError::io(panel_path, e))?;

    let mut w = csv::Writer::from_path(predict_path).map_err(|e| open_error(predict_path, e))?;
    let mut header = vec!["id".to_string()];
    header.extend(names);
    w.write_record(&header)?;
    for i in 0..panel.n() {
        let mut rec = vec![i.to_string()];
        rec.extend(panel.predictor(i).iter().map(f64::to_string));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| CliError::io(predict_path, e))?;
    Ok(())
}
