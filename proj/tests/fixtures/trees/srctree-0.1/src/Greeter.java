package acme.srctree;

/*
 * builds greeting strings
 */
public class Greeter {
    public String greet(String name) {
        return "hello " + name; // exercised since 0.1
    }
}
