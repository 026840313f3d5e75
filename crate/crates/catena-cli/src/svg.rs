//! Static SVG rendering of a solved chain.

use catena::{Point, Polyline};

/// Renders the chain as one polyline with markers on the two attachment
/// points. The vertical axis is flipped so the chain hangs downward on
/// screen, and the viewBox hugs the data with a 5% margin.
pub fn render_svg(polyline: &Polyline) -> String {
    // 0.0 - y rather than -y so flipped zeros print as "0", not "-0".
    let flipped: Vec<Point> = polyline
        .vertices
        .iter()
        .map(|v| Point { x: v.x, y: 0.0 - v.y })
        .collect();

    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in &flipped {
        min_x = min_x.min(v.x);
        max_x = max_x.max(v.x);
        min_y = min_y.min(v.y);
        max_y = max_y.max(v.y);
    }
    let extent = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let margin = 0.05 * extent;
    let width = max_x - min_x + 2.0 * margin;
    let height = max_y - min_y + 2.0 * margin;

    let points: Vec<String> = flipped.iter().map(|v| format!("{},{}", v.x, v.y)).collect();
    let first = flipped.first().expect("polyline has vertices");
    let last = flipped.last().expect("polyline has vertices");
    let stroke = 0.01 * extent;
    let marker = 0.02 * extent;

    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
            "viewBox=\"{} {} {} {}\" width=\"640\" height=\"{}\">\n",
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#2b6cb0\" stroke-width=\"{}\" ",
            "stroke-linecap=\"round\" stroke-linejoin=\"round\"/>\n",
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#1a202c\"/>\n",
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#1a202c\"/>\n",
            "</svg>\n"
        ),
        min_x - margin,
        min_y - margin,
        width,
        height,
        (640.0 * height / width).round(),
        points.join(" "),
        stroke,
        first.x,
        first.y,
        marker,
        last.x,
        last.y,
        marker,
    )
}
